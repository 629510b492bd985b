"""Closed-form security bounds, figure tables and the fair-protocol optimum."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import OutOfRange, SingularDenominator

SINGULAR_TOL = 1e-12
HALF_EXCLUSION = 1e-6
INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def _unit(name: str, x: float) -> float:
    x = float(x)
    if not 0.0 <= x <= 1.0 or math.isnan(x):
        raise OutOfRange(f"{name} must lie in [0, 1], got {x}")
    return x


@dataclass(frozen=True)
class CheckPolicy:
    """Probability ``zeta`` that Bob is the party checked at unveil."""

    zeta: float

    def __post_init__(self):
        object.__setattr__(self, "zeta", _unit("zeta", self.zeta))


def pa_lower(d: float) -> float:
    return 1.0 - _unit("d", d) / 2.0


def pb_lower(d: float) -> float:
    d = _unit("d", d)
    return (1.0 + d * d) / 2.0


def effective_probabilities(pa: float, pb: float, policy: CheckPolicy | float) -> tuple[float, float]:
    """Cheating probabilities once an unchecked party is allowed to win for free."""
    zeta = policy.zeta if isinstance(policy, CheckPolicy) else _unit("zeta", policy)
    pa = _unit("pa", pa)
    pb = _unit("pb", pb)
    return zeta + (1.0 - zeta) * pa, (1.0 - zeta) + zeta * pb


def combined_lower(d: float, zeta: float) -> float:
    """Lower bound on ``P_A* + P_B*`` at trace distance ``d`` and check probability ``zeta``."""
    d = _unit("d", d)
    zeta = _unit("zeta", zeta)
    return 2.0 - (zeta + d) / 2.0 + zeta * d * (1.0 + d) / 2.0


def _fair_alpha(alpha: float) -> tuple[float, float]:
    alpha = float(alpha)
    # Both closed forms are 0/0 at alpha = 1/2.
    if abs(alpha - 0.5) < HALF_EXCLUSION:
        raise SingularDenominator(f"alpha = {alpha} is within {HALF_EXCLUSION} of 1/2")
    if not 0.5 < alpha <= 1.0:
        raise OutOfRange(f"alpha must lie in (1/2, 1], got {alpha}")
    return alpha, 2.0 * math.sqrt(alpha * (1.0 - alpha))


def fair_zeta(alpha: float) -> float:
    """Check probability that equalizes both parties' cheating odds in the diagonal model."""
    alpha, f = _fair_alpha(alpha)
    den = (2.0 * alpha - 1.0) ** 2 + f - 2.0
    if abs(den) <= SINGULAR_TOL:
        raise SingularDenominator(f"fair_zeta denominator vanishes at alpha = {alpha}")
    return (f - 1.0) / den


def fair_p_star(alpha: float) -> float:
    """Common cheating probability ``P_A* = P_B*`` of the fair diagonal protocol."""
    alpha, f = _fair_alpha(alpha)
    den = 4.0 * alpha * alpha - 4.0 * alpha + f - 1.0
    if abs(den) <= SINGULAR_TOL:
        raise SingularDenominator(f"fair_p_star denominator vanishes at alpha = {alpha}")
    return ((f + 1.0) * (2.0 * alpha * alpha - 2.0 * alpha + 1.0) - 2.0) / den


@dataclass(frozen=True)
class FairOptimum:
    alpha_star: float
    zeta_star: float
    p_star: float


def golden_section_min(f, lo: float, hi: float, tol: float, max_iter: int = 500) -> float:
    """Minimize a unimodal ``f`` on ``[lo, hi]``; returns the abscissa."""
    a, b = lo, hi
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def fair_optimize(tolerance: float = 1e-6) -> FairOptimum:
    """Minimize :func:`fair_p_star` over ``alpha`` in ``(1/2, 1)``.

    A 1e-3 grid localizes the bracket, golden-section search refines it.
    """
    if not tolerance > 0:
        raise OutOfRange(f"tolerance must be positive, got {tolerance}")
    lo, hi = 0.5 + HALF_EXCLUSION, 1.0 - HALF_EXCLUSION
    n = int(round((hi - lo) / 1e-3))
    grid = [lo + (hi - lo) * k / n for k in range(n + 1)]
    values = [fair_p_star(a) for a in grid]
    k = min(range(len(values)), key=values.__getitem__)
    a = grid[max(k - 1, 0)]
    b = grid[min(k + 1, n)]
    alpha = golden_section_min(fair_p_star, a, b, tolerance)
    return FairOptimum(alpha, fair_zeta(alpha), fair_p_star(alpha))


def _grid(step: float) -> list[float]:
    step = float(step)
    if not 0.0 < step <= 0.1:
        raise OutOfRange(f"step must lie in (0, 0.1], got {step}")
    n = int(math.floor(1.0 / step + 1e-9))
    return [min(k * step, 1.0) for k in range(n + 1)]


def figure1_scan(step: float) -> list[tuple[float, float, float]]:
    """Rows ``(alpha, P_B, I_m)`` for ``alpha = 0, step, ...``."""
    from .attacks import bob_mutual_information, bob_pass_probability

    return [(a, bob_pass_probability(a), bob_mutual_information(a)) for a in _grid(step)]


def figure2_scan(step: float) -> list[tuple[float, float, float]]:
    """Rows ``(d, zeta, bound)`` over the unit square, ``d`` varying slowest."""
    axis = _grid(step)
    return [(d, z, combined_lower(d, z)) for d in axis for z in axis]
