"""Pure states, density matrices, binary projective measurements.

Bipartite vectors are stored in ``ancilla ⊗ system`` order: component
``i * d_sys + j`` is the amplitude of ``|i⟩_anc |j⟩_sys``. Factor dimensions
are always passed explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import qmath
from .errors import DegenerateOutcome, DimensionMismatch, InvalidSplit, InvalidState

NORM_TOL = 1e-9
TRACE_TOL = 1e-9
IDEMPOTENT_TOL = 1e-9
OUTCOME_NORM_FLOOR = 1e-12
HELSTROM_TIE_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class PureState:
    vector: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vector, dtype=np.complex128).reshape(-1)
        if v.size == 0 or not np.all(np.isfinite(v)):
            raise InvalidState("state vector must be non-empty and finite")
        norm = np.linalg.norm(v)
        if abs(norm - 1.0) > NORM_TOL:
            raise InvalidState(f"state vector has norm {norm:.12g}, expected 1")
        v.setflags(write=False)
        object.__setattr__(self, "vector", v)

    @classmethod
    def from_amplitudes(cls, amplitudes, normalize: bool = False) -> "PureState":
        v = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
        if normalize:
            n = np.linalg.norm(v)
            if n < OUTCOME_NORM_FLOOR:
                raise InvalidState("cannot normalize a zero vector")
            v = v / n
        return cls(v)

    @classmethod
    def basis(cls, dim: int, index: int) -> "PureState":
        v = np.zeros(dim, dtype=np.complex128)
        v[index] = 1.0
        return cls(v)

    @property
    def dim(self) -> int:
        return self.vector.size

    def density(self) -> "DensityMatrix":
        return DensityMatrix(np.outer(self.vector, self.vector.conj()))

    def equals_up_to_phase(self, other: "PureState", tol: float = 1e-9) -> bool:
        return abs(overlap_check_pass_probability(self, other) - 1.0) <= tol

    def __repr__(self):
        return f"PureState({np.array2string(self.vector, precision=6)})"


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    matrix: np.ndarray

    def __post_init__(self):
        m = qmath.as_matrix(self.matrix)
        if m.shape[0] != m.shape[1]:
            raise InvalidState(f"density matrix must be square, got {m.shape}")
        if not qmath.is_hermitian(m):
            raise InvalidState("density matrix is not Hermitian")
        tr = np.trace(m).real
        if abs(tr - 1.0) > TRACE_TOL:
            raise InvalidState(f"density matrix has trace {tr:.12g}, expected 1")
        w, _ = qmath.eig_hermitian(m)
        if w[-1] < -qmath.PSD_TOL:
            raise InvalidState(f"density matrix has negative eigenvalue {w[-1]:.3g}")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def mixture(cls, states, probs) -> "DensityMatrix":
        """``Σ p_i |ψ_i⟩⟨ψ_i|`` for pure states ``states`` with weights ``probs``."""
        states = list(states)
        rho = sum(p * np.outer(s.vector, s.vector.conj()) for s, p in zip(states, probs))
        return cls(rho)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __repr__(self):
        return f"DensityMatrix({np.array2string(self.matrix, precision=6)})"


@dataclass(frozen=True, eq=False)
class ProjectorPair:
    """Two-outcome projective measurement ``{p0, p1}`` with ``p0 + p1 = I``."""

    p0: np.ndarray
    p1: np.ndarray

    def __post_init__(self):
        p0 = qmath.as_matrix(self.p0)
        p1 = qmath.as_matrix(self.p1)
        if p0.shape != p1.shape or p0.shape[0] != p0.shape[1]:
            raise DimensionMismatch(f"projector shapes {p0.shape} and {p1.shape}")
        eye = np.eye(p0.shape[0])
        for name, p in (("p0", p0), ("p1", p1)):
            if not qmath.is_hermitian(p, IDEMPOTENT_TOL):
                raise InvalidState(f"{name} is not Hermitian")
            if np.max(np.abs(p @ p - p)) > IDEMPOTENT_TOL:
                raise InvalidState(f"{name} is not idempotent")
        if np.max(np.abs(p0 + p1 - eye)) > IDEMPOTENT_TOL:
            raise InvalidState("p0 + p1 != I")
        if np.max(np.abs(p0 @ p1)) > IDEMPOTENT_TOL:
            raise InvalidState("p0 p1 != 0")
        p0.setflags(write=False)
        p1.setflags(write=False)
        object.__setattr__(self, "p0", p0)
        object.__setattr__(self, "p1", p1)

    @property
    def dim(self) -> int:
        return self.p0.shape[0]

    def __getitem__(self, outcome: int) -> np.ndarray:
        return (self.p0, self.p1)[outcome]


@dataclass(frozen=True)
class MeasurementOutcome:
    outcome: int
    post_state: PureState
    outcome_probability: float


def _same_dim(a, b):
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimensions differ: {a.dim} vs {b.dim}")


def trace_distance(a: DensityMatrix, b: DensityMatrix) -> float:
    """``tr|a - b| / 2``."""
    _same_dim(a, b)
    d = 0.5 * qmath.trace_norm(a.matrix - b.matrix)
    return min(max(d, 0.0), 1.0)


def fidelity(a: DensityMatrix, b: DensityMatrix) -> float:
    """Root fidelity ``tr sqrt(sqrt(a) b sqrt(a))`` (not squared)."""
    _same_dim(a, b)
    sa = qmath.sqrtm_psd(a.matrix)
    # The nuclear norm of sqrt(a) sqrt(b) is the same quantity and stays
    # accurate for rank-deficient inputs.
    sb = qmath.sqrtm_psd(b.matrix)
    f = float(np.sum(np.linalg.svd(sa @ sb, compute_uv=False)))
    return min(max(f, 0.0), 1.0)


def helstrom_projectors(rho0: DensityMatrix, rho1: DensityMatrix) -> ProjectorPair:
    """Optimal two-state discrimination measurement.

    ``p0`` projects onto the eigenspace of ``rho0 - rho1`` with eigenvalues
    ``>= -1e-10`` (ties go to ``p0``); ``p1 = I - p0``.
    """
    _same_dim(rho0, rho1)
    w, v = qmath.eig_hermitian(rho0.matrix - rho1.matrix)
    keep = w >= -HELSTROM_TIE_TOL
    p0 = qmath.projector(v[:, keep]) if keep.any() else np.zeros_like(rho0.matrix)
    return ProjectorPair(p0, np.eye(rho0.dim) - p0)


def discrimination_success(rho0: DensityMatrix, rho1: DensityMatrix,
                           pair: ProjectorPair) -> float:
    """Equal-prior success probability of guessing the bit with ``pair``."""
    return 0.5 * float(np.trace(pair.p0 @ rho0.matrix).real
                       + np.trace(pair.p1 @ rho1.matrix).real)


def _split(total: int, system_dim: int) -> int:
    if system_dim <= 0 or total % system_dim:
        raise InvalidSplit(
            f"vector of dimension {total} does not factor with system dimension {system_dim}")
    return total // system_dim


def apply_on_system(op: np.ndarray, vector: np.ndarray) -> np.ndarray:
    """Apply ``I_anc ⊗ op`` to a bipartite vector without forming the Kronecker product."""
    d = op.shape[0]
    a = _split(vector.size, d)
    return (vector.reshape(a, d) @ op.T).reshape(-1)


def branch_probabilities(state: PureState, pair: ProjectorPair) -> tuple[float, float]:
    """Born-rule probabilities of ``I ⊗ p0`` and ``I ⊗ p1`` on ``state``."""
    v0 = apply_on_system(pair.p0, state.vector)
    p0 = float(np.vdot(v0, v0).real)
    p0 = min(max(p0, 0.0), 1.0)
    return p0, 1.0 - p0


def project(state: PureState, pair: ProjectorPair, outcome: int) -> MeasurementOutcome:
    """Deterministically realize ``outcome`` and return the normalized post-state."""
    v = apply_on_system(pair[outcome], state.vector)
    norm = float(np.linalg.norm(v))
    if norm < OUTCOME_NORM_FLOOR:
        raise DegenerateOutcome(f"outcome {outcome} has zero amplitude")
    return MeasurementOutcome(outcome, PureState(v / norm), norm * norm)


def measure(state: PureState, pair: ProjectorPair, rng: np.random.Generator) -> MeasurementOutcome:
    """Sample a projective measurement of ``pair`` on the system factor of ``state``.

    When ``state`` lives on ``ancilla ⊗ system`` the measurement acts as
    ``I ⊗ p_k``. Exactly one uniform draw is consumed from ``rng``.
    """
    if state.dim % pair.dim:
        raise DimensionMismatch(
            f"state of dimension {state.dim} cannot carry a {pair.dim}-level system")
    p0, _ = branch_probabilities(state, pair)
    outcome = 0 if rng.random() < p0 else 1
    return project(state, pair, outcome)


def overlap_check_pass_probability(original: PureState, post: PureState) -> float:
    """``|⟨original|post⟩|²``: chance that ``post`` passes a projection onto ``original``."""
    _same_dim(original, post)
    p = abs(np.vdot(original.vector, post.vector)) ** 2
    return min(float(p), 1.0)


def partial_trace(vector, dims: tuple[int, int], keep: int) -> np.ndarray:
    """Reduced density matrix of a bipartite pure state.

    Args:
        vector: amplitudes in ``first ⊗ second`` order.
        dims: ``(d_first, d_second)``.
        keep: ``0`` keeps the first factor, ``1`` keeps the second.
    """
    v = np.asarray(getattr(vector, "vector", vector), dtype=np.complex128).reshape(-1)
    da, db = dims
    if da * db != v.size:
        raise InvalidSplit(f"dims {dims} do not match vector dimension {v.size}")
    m = v.reshape(da, db)
    if keep == 1:
        return m.T @ m.conj()
    if keep == 0:
        return m @ m.conj().T
    raise ValueError("keep must be 0 or 1")


def purify(rho: DensityMatrix) -> PureState:
    """Canonical purification ``vec(sqrt(rho))`` on ``ancilla ⊗ system``, ancilla dim = d."""
    s = qmath.sqrtm_psd(rho.matrix)
    # amplitude of |i⟩_anc|j⟩_sys is sqrt(rho)[j, i]
    return PureState.from_amplitudes(s.T.reshape(-1), normalize=True)


def uhlmann_pair(rho0: DensityMatrix, rho1: DensityMatrix) -> tuple[PureState, PureState]:
    """Purifications of ``rho0`` and ``rho1`` with real, maximal overlap.

    Both live on ``ancilla ⊗ system`` with ancilla dimension equal to the
    system dimension. ``⟨psi0|psi1⟩`` equals :func:`fidelity`.
    """
    _same_dim(rho0, rho1)
    s0 = qmath.sqrtm_psd(rho0.matrix)
    s1 = qmath.sqrtm_psd(rho1.matrix)
    # With amplitude matrices A = s0, B = s1 W the overlap is tr(s0 s1 W);
    # for s0 s1 = U S V^†, W = V U^† turns it into tr S.
    u, _, v = qmath.svd(s0 @ s1)
    w = v @ u.conj().T
    a = s0
    b = s1 @ w
    psi0 = PureState.from_amplitudes(a.T.reshape(-1), normalize=True)
    psi1 = PureState.from_amplitudes(b.T.reshape(-1), normalize=True)
    ov = np.vdot(psi0.vector, psi1.vector)
    if abs(ov) > 0:
        # Remove any residual phase left by floating point.
        psi1 = PureState(psi1.vector * (abs(ov) / ov))
    return psi0, psi1
