"""Optimal cheating strategies for the receiver (Bob) and the sender (Alice)."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InvalidSplit, InvalidState, OutOfRange
from .states import (
    DensityMatrix,
    PureState,
    branch_probabilities,
    helstrom_projectors,
    partial_trace,
    trace_distance,
    uhlmann_pair,
)

SUPPORT_TOL = 1e-9


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not 0.0 <= alpha <= 1.0 or math.isnan(alpha):
        raise OutOfRange(f"alpha must lie in [0, 1], got {alpha}")
    return alpha


def binary_entropy(p: float) -> float:
    """Shannon entropy in bits, with ``0 log 0 = 0``."""
    p = _check_alpha(p)
    h = 0.0
    for q in (p, 1.0 - p):
        if q > 0.0:
            h -= q * math.log2(q)
    return h


def bob_pass_probability(alpha: float) -> float:
    """Chance that Bob's Helstrom measurement survives Alice's intactness check.

    Equals ``alpha**2 + (1 - alpha)**2``; minimal (1/2) at ``alpha = 1/2``.
    """
    alpha = _check_alpha(alpha)
    return 0.5 + 0.5 * (2.0 * alpha - 1.0) ** 2


def bob_mutual_information(alpha: float) -> float:
    """Bits Bob learns about the committed bit: ``1 - h(alpha)``."""
    return 1.0 - binary_entropy(alpha)


@dataclass(frozen=True)
class BobAttackReport:
    alpha: float
    pass_probability: float
    mutual_information_bits: float
    decode_reliability: float


@dataclass(frozen=True, eq=False)
class AliceAttackState:
    cheat_state: PureState
    normalization: float
    pass_probability: float
    psi0: PureState
    psi1: PureState


def _in_support(sub: np.ndarray, rho: np.ndarray) -> bool:
    # sub is supported inside rho iff sub has no weight on rho's kernel.
    w, v = np.linalg.eigh(rho)
    kernel = v[:, w <= SUPPORT_TOL]
    if kernel.shape[1] == 0:
        return True
    return float(np.trace(kernel.conj().T @ sub @ kernel).real) <= SUPPORT_TOL


def bob_attack_analyze(rho0: DensityMatrix, rho1: DensityMatrix, commit_state: PureState,
                       system_split: tuple[int, int] | None = None) -> BobAttackReport:
    """Bob's Helstrom attack against one commitment state.

    ``alpha`` is the probability of the ``P0`` outcome on the system factor of
    ``commit_state``. ``system_split`` is ``(ancilla_dim, system_dim)``;
    ``None`` means no ancilla.
    """
    if rho0.dim != rho1.dim:
        raise DimensionMismatch(f"rho0 is {rho0.dim}-dimensional, rho1 is {rho1.dim}")
    d = rho0.dim
    if system_split is None:
        system_split = (1, d)
    anc, sys_dim = system_split
    if sys_dim != d:
        raise DimensionMismatch(f"system factor {sys_dim} does not match rho dimension {d}")
    if anc < 1 or anc * sys_dim != commit_state.dim:
        raise InvalidSplit(
            f"split {system_split} does not match commit state dimension {commit_state.dim}")
    reduced = partial_trace(commit_state, (anc, sys_dim), keep=1)
    if not (_in_support(reduced, rho0.matrix) or _in_support(reduced, rho1.matrix)):
        raise InvalidState("commit state is not supported on either committed density matrix")

    pair = helstrom_projectors(rho0, rho1)
    alpha, _ = branch_probabilities(commit_state, pair)
    return BobAttackReport(
        alpha=alpha,
        pass_probability=bob_pass_probability(alpha),
        mutual_information_bits=bob_mutual_information(alpha),
        decode_reliability=0.5 * (1.0 + trace_distance(rho0, rho1)),
    )


def alice_cheat_prepare(rho0: DensityMatrix, rho1: DensityMatrix) -> AliceAttackState:
    """Alice's undetermined commitment ``(psi0 + psi1) / N`` from the Uhlmann pair.

    The state lives on ``ancilla ⊗ system`` (ancilla dimension = system
    dimension). Unveiling either bit passes a projection onto ``psi_b`` with
    probability ``(1 + F) / 2``.
    """
    psi0, psi1 = uhlmann_pair(rho0, rho1)
    ov = np.vdot(psi0.vector, psi1.vector)
    norm = math.sqrt(max(2.0 + 2.0 * ov.real, 0.0))
    cheat = PureState.from_amplitudes((psi0.vector + psi1.vector) / norm, normalize=True)
    p0 = abs(np.vdot(psi0.vector, cheat.vector)) ** 2
    return AliceAttackState(cheat, norm, float(p0), psi0, psi1)
