import math

import numpy as np
import pytest
from scipy.optimize import minimize_scalar

from csqbc import (
    CheckPolicy,
    bob_pass_probability,
    combined_lower,
    effective_probabilities,
    fair_optimize,
    fair_p_star,
    fair_zeta,
    figure1_scan,
    figure2_scan,
    pa_lower,
    pb_lower,
)
from csqbc.bounds import golden_section_min
from csqbc.errors import OutOfRange, SingularDenominator


def fair_pa_star_via_components(alpha):
    f = 2 * math.sqrt(alpha * (1 - alpha))
    zeta = fair_zeta(alpha)
    return zeta + (1 - zeta) * (1 + f) / 2


def fair_pb_star_via_components(alpha):
    d = 2 * alpha - 1
    zeta = fair_zeta(alpha)
    return (1 - zeta) + zeta * (1 + d * d) / 2


def test_single_bounds():
    assert pa_lower(0) == 1 and pa_lower(1) == 0.5
    assert pa_lower(math.sqrt(2) / 2) == pytest.approx(0.64645, abs=1e-5)
    assert pb_lower(0) == 0.5 and pb_lower(1) == 1
    assert pb_lower(math.sqrt(2) / 2) == pytest.approx(0.75, abs=1e-15)
    with pytest.raises(OutOfRange):
        pa_lower(1.2)
    with pytest.raises(OutOfRange):
        pb_lower(-0.1)


def test_effective_probabilities():
    assert effective_probabilities(0.5, 1, CheckPolicy(0)) == (0.5, 1)
    assert effective_probabilities(1, 0.5, CheckPolicy(1)) == (1, 0.5)
    pa, pb = effective_probabilities(0.81902, 0.79645, CheckPolicy(0.4707))
    assert pa == pytest.approx(0.9043, abs=1e-4)
    assert pb == pytest.approx(0.9042, abs=1e-4)
    with pytest.raises(OutOfRange):
        CheckPolicy(1.5)
    with pytest.raises(OutOfRange):
        effective_probabilities(1.2, 0.5, 0.5)


def test_combined_lower_examples():
    assert combined_lower(1, 0) == 1.5
    assert combined_lower(0, 1) == 1.5
    assert combined_lower(0, 0) == 2


def test_combined_lower_floor_and_identity():
    axis = np.linspace(0, 1, 101)
    for d in axis:
        for z in axis:
            v = combined_lower(d, z)
            assert v >= 1.5 - 1e-12
            pa, pb = effective_probabilities(pa_lower(d), pb_lower(d), CheckPolicy(z))
            assert v == pytest.approx(pa + pb, abs=1e-12)


def test_fair_zeta_examples():
    assert fair_zeta(0.885) == pytest.approx(0.4707, abs=1e-4)
    assert fair_zeta(1.0) == 1.0
    with pytest.raises(SingularDenominator):
        fair_zeta(0.5 + 1e-9)
    with pytest.raises(SingularDenominator):
        fair_p_star(0.5)
    with pytest.raises(OutOfRange):
        fair_zeta(0.3)
    with pytest.raises(OutOfRange):
        fair_p_star(1.01)


def test_fair_p_star_examples():
    assert fair_p_star(0.885) == pytest.approx(0.904, abs=1e-3)
    assert fair_p_star(1.0) == 1.0


@pytest.mark.parametrize("alpha", np.linspace(0.51, 0.99, 25))
def test_fair_two_routes_agree(alpha):
    z = fair_zeta(alpha)
    assert 0 <= z <= 1
    assert fair_p_star(alpha) == pytest.approx(fair_pa_star_via_components(alpha), abs=1e-9)
    assert fair_pa_star_via_components(alpha) == pytest.approx(fair_pb_star_via_components(alpha), abs=1e-9)
    # single-alpha ensemble: Bob's pass probability sits exactly on pb_lower
    assert bob_pass_probability(alpha) == pytest.approx(pb_lower(2 * alpha - 1), abs=1e-12)
    assert 0.5 <= fair_p_star(alpha) <= 1


def test_unique_interior_minimum():
    h = 1e-4
    grid = np.arange(0.5 + 2 * h, 1 - h / 2, h)
    deriv = [(fair_p_star(a + h / 2) - fair_p_star(a - h / 2)) / h for a in grid]
    signs = np.sign(deriv)
    changes = np.count_nonzero(signs[1:] != signs[:-1])
    assert changes == 1


def test_fair_optimize_matches_reported_values():
    opt = fair_optimize(1e-6)
    assert opt.alpha_star == pytest.approx(0.885, abs=2e-3)
    assert opt.zeta_star == pytest.approx(0.469, abs=5e-3)
    assert opt.p_star == pytest.approx(0.904, abs=1e-3)
    assert math.sqrt(opt.alpha_star) == pytest.approx(0.941, abs=1e-3)
    assert math.degrees(math.acos(math.sqrt(opt.alpha_star))) == pytest.approx(19.85, abs=0.1)


def test_fair_optimize_is_a_minimum():
    opt = fair_optimize(1e-6)
    assert opt.p_star == fair_p_star(opt.alpha_star)
    assert opt.zeta_star == fair_zeta(opt.alpha_star)
    for a in np.linspace(0.5005, 0.9995, 1000):
        assert opt.p_star <= fair_p_star(a) + 1e-12
    h = 1e-5
    slope = (fair_p_star(opt.alpha_star + h) - fair_p_star(opt.alpha_star - h)) / (2 * h)
    assert abs(slope) <= 1e-4


def test_fair_optimize_against_scipy():
    ref = minimize_scalar(fair_p_star, bounds=(0.5 + 1e-6, 1 - 1e-6), method="bounded",
                          options={"xatol": 1e-10})
    opt = fair_optimize(1e-8)
    assert opt.alpha_star == pytest.approx(ref.x, abs=1e-5)
    assert opt.p_star == pytest.approx(ref.fun, abs=1e-10)


def test_fair_optimize_deterministic_and_validates():
    assert fair_optimize(1e-6) == fair_optimize(1e-6)
    with pytest.raises(OutOfRange):
        fair_optimize(0)


def test_golden_section_on_parabola():
    x = golden_section_min(lambda t: (t - 0.3) ** 2, -1, 2, 1e-9)
    assert x == pytest.approx(0.3, abs=1e-8)


def test_figure1_scan():
    rows = figure1_scan(0.01)
    assert len(rows) == 101
    assert rows[50] == pytest.approx((0.5, 0.5, 0.0))
    assert rows[0][0] == 0 and rows[-1][0] == 1
    a, pb, im = figure1_scan(0.0001)[8536]
    assert a == pytest.approx(0.8536)
    assert pb == pytest.approx(0.75, abs=1e-3)
    assert im == pytest.approx(0.399, abs=1e-3)
    with pytest.raises(OutOfRange):
        figure1_scan(0.2)
    with pytest.raises(OutOfRange):
        figure1_scan(0)


def test_figure2_scan():
    rows = figure2_scan(0.01)
    assert len(rows) == 101 ** 2
    table = {(round(d, 9), round(z, 9)): b for d, z, b in rows}
    assert table[(1, 0)] == 1.5 and table[(0, 1)] == 1.5 and table[(0, 0)] == 2
    low = min(b for _, _, b in rows)
    assert abs(low - 1.5) <= 1e-12
    argmins = {k for k, b in table.items() if b <= 1.5 + 1e-12}
    assert argmins == {(1, 0), (0, 1)}
    assert len(figure2_scan(0.1)) == 121
