"""Exit criteria for the package, one test per criterion.

Run ``pytest tests/test_acceptance.py`` (or this file directly); a PASS/FAIL
line per criterion is printed in the terminal summary.
"""

import math
import time

import numpy as np
import pytest
import sympy as sp

from csqbc import (
    analyze,
    bob_mutual_information,
    bob_pass_probability,
    builtin_protocol,
    fair_optimize,
    fidelity,
    figure2_scan,
    helstrom_projectors,
    monte_carlo,
    trace_distance,
    uhlmann_pair,
)
from csqbc.cli import dumps
from csqbc.qmath import trace_norm
from csqbc.states import discrimination_success

from conftest import random_pairs, random_unitary

RESULTS = []


@pytest.fixture
def criterion(request):
    """Records the outcome of the criterion named by the test's first docstring line."""
    label = request.node.function.__doc__.strip().splitlines()[0]
    record = {"label": label, "detail": ""}
    yield record
    RESULTS.append(record)


def _finish(record, ok, detail):
    record["ok"] = ok
    record["detail"] = detail
    assert ok, detail


def test_ac1_reference_protocol(criterion):
    """AC1 hbc2000 closed forms: D, reliability, P_B"""
    t0 = time.perf_counter()
    rep = analyze(builtin_protocol("hbc2000"))
    dt = time.perf_counter() - t0
    ok = (abs(rep.d - math.sqrt(2) / 2) <= 1e-9
          and abs(rep.reliability - 0.853553) <= 1e-6
          and abs(rep.p_b - 0.75) <= 1e-12
          and dt < 1.0)
    _finish(criterion, ok, f"D={rep.d:.12f} rel={rep.reliability:.9f} P_B={rep.p_b!r} t={dt:.3f}s")


def test_ac2_figure1_dash_point(criterion):
    """AC2 Fig.1 point alpha=0.8536: P_B~0.75, I_m~0.399"""
    pb = bob_pass_probability(0.8536)
    im = bob_mutual_information(0.8536)
    ok = abs(pb - 0.75) <= 1e-3 and abs(im - 0.399) <= 1e-3
    _finish(criterion, ok, f"P_B={pb:.6f} I_m={im:.6f}")


def test_ac3_bound_floor(criterion):
    """AC3 combined bound min 3/2 on 101x101 grid, only at (1,0) and (0,1)"""
    t0 = time.perf_counter()
    rows = figure2_scan(0.01)
    dt = time.perf_counter() - t0
    low = min(b for _, _, b in rows)
    argmin = sorted((round(d, 12), round(z, 12)) for d, z, b in rows if b <= 1.5 + 1e-12)
    ok = (len(rows) == 101 * 101 and abs(low - 1.5) <= 1e-12
          and argmin == [(0.0, 1.0), (1.0, 0.0)] and dt < 1.0)
    _finish(criterion, ok, f"min={low!r} argmin={argmin} t={dt:.3f}s")


def test_ac4_fair_optimum(criterion):
    """AC4 fair optimum alpha*, zeta*, P*, sqrt(alpha*)"""
    t0 = time.perf_counter()
    opt = fair_optimize(1e-6)
    dt = time.perf_counter() - t0
    root = math.sqrt(opt.alpha_star)
    ok = (0.883 <= opt.alpha_star <= 0.887 and 0.464 <= opt.zeta_star <= 0.476
          and 0.903 <= opt.p_star <= 0.905 and 0.940 <= root <= 0.942 and dt < 1.0)
    _finish(criterion, ok, f"alpha={opt.alpha_star:.6f} zeta={opt.zeta_star:.6f} "
                           f"P*={opt.p_star:.6f} sqrt={root:.6f} t={dt:.3f}s")


def test_ac5_monte_carlo_vs_closed_form(criterion):
    """AC5 Monte Carlo within 4 sigma of closed forms (1e5 trials each)"""
    t0 = time.perf_counter()
    hbc = monte_carlo(builtin_protocol("hbc2000", 1.0), "honest", "cheat", 100_000, seed=7)
    fair = monte_carlo(builtin_protocol("fair_angle"), "cheat", "honest", 100_000, seed=7)
    dt = time.perf_counter() - t0

    def z(observed, p, n):
        return abs(observed - p) / math.sqrt(p * (1 - p) / n)

    z_pass = z(hbc.pass_rate, 0.75, hbc.trials)
    z_dec = z(hbc.decode_accuracy, 0.853553, hbc.measured)
    alpha = math.cos(math.radians(19.85)) ** 2
    zeta = 0.469
    expected = zeta + (1 - zeta) * (1 + 2 * math.sqrt(alpha * (1 - alpha))) / 2
    z_fair = z(fair.pass_rate, expected, fair.trials)
    ok = z_pass <= 4 and z_dec <= 4 and z_fair <= 4 and dt < 30
    _finish(criterion, ok, f"hbc pass z={z_pass:.2f} decode z={z_dec:.2f}; "
                           f"fair pass={fair.pass_rate:.5f} vs {expected:.5f} z={z_fair:.2f}; t={dt:.1f}s")


def test_ac6_oracle_suites(criterion):
    """AC6 oracle suites on 200 random pairs (Helstrom, Uhlmann, FvdG, max over P)"""
    t0 = time.perf_counter()
    rng = np.random.default_rng(606)
    worst = dict(helstrom=0.0, uhlmann=0.0, fvdg=-1.0, projector=-1.0)
    for a, b in random_pairs(200, seed=2026):
        d, f = trace_distance(a, b), fidelity(a, b)
        pair = helstrom_projectors(a, b)
        worst["helstrom"] = max(worst["helstrom"], abs(discrimination_success(a, b, pair) - (1 + d) / 2))
        psi0, psi1 = uhlmann_pair(a, b)
        worst["uhlmann"] = max(worst["uhlmann"], abs(np.vdot(psi0.vector, psi1.vector) - f))
        worst["fvdg"] = max(worst["fvdg"], (1 - f) - d, d - math.sqrt(max(1 - f * f, 0.0)))
        diff = a.matrix - b.matrix
        norm = trace_norm(diff)
        for _ in range(50):
            k = int(rng.integers(0, a.dim + 1))
            q = random_unitary(rng, a.dim)[:, :k]
            worst["projector"] = max(worst["projector"],
                                     2 * np.trace(q @ q.conj().T @ diff).real - norm)
    dt = time.perf_counter() - t0
    ok = (worst["helstrom"] <= 1e-9 and worst["uhlmann"] <= 1e-9
          and worst["fvdg"] <= 1e-9 and worst["projector"] <= 1e-9 and dt < 60)
    _finish(criterion, ok, " ".join(f"{k}={v:.2e}" for k, v in worst.items()) + f" t={dt:.1f}s")


def test_ac7_exact_rational(criterion):
    """AC7 exact enumeration of hbc2000 gives P_B = 3/4"""
    c, s = sp.cos(sp.pi / 8), sp.sin(sp.pi / 8)
    # |0>, |->, |1>, |+> in the Helstrom basis {e0, e1}
    inputs = [(c, s), (c, -s), (-s, c), (s, c)]
    total = sum(sp.Rational(1, 4) * amp ** 2 * amp ** 2 for pair in inputs for amp in pair)
    exact = sp.simplify(total)
    numeric = bob_pass_probability(math.cos(math.pi / 8) ** 2)
    ok = exact == sp.Rational(3, 4) and abs(numeric - 0.75) <= 1e-15
    _finish(criterion, ok, f"exact={exact} float={numeric!r}")


def test_ac8_determinism(criterion):
    """AC8 identical seeds give byte-identical JSON for any worker count"""
    p = builtin_protocol("fair_angle")
    outs = {dumps(monte_carlo(p, "cheat", "cheat", 5_000, seed=99, workers=w).to_dict())
            for w in (1, 2, 4, 1)}
    ok = len(outs) == 1
    _finish(criterion, ok, f"{len(outs)} distinct output(s)")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
