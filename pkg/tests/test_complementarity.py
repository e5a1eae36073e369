import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tiemzi import complementarity as comp
from tiemzi.errors import SingularConfigurationError
from tiemzi.inference import StandardDetectorModel

probs = st.floats(0, 1)
angles = st.floats(-2 * math.pi, 2 * math.pi)


def test_concurrence_examples():
    assert comp.concurrence(0.5, math.pi / 2) == pytest.approx(1.0, abs=1e-15)
    assert comp.concurrence(0.0, 1.234) == 0.0
    assert comp.concurrence(0.75, math.pi / 3) == pytest.approx(0.75, abs=1e-15)
    assert comp.concurrence_oracle(0.75, math.pi / 3) == pytest.approx(0.75, abs=1e-12)


@given(probs, angles)
def test_concurrence_spin_flip_oracle_n3(p, phi):
    assert comp.concurrence_oracle(p, phi, 3) == pytest.approx(comp.concurrence_closed_form(p, phi), abs=1e-12)


@given(probs, angles, st.sampled_from([1, 2, 4, 5, 10]))
def test_concurrence_general_n(p, phi, n):
    # Schmidt form: 2 |det| of the 2x2 coefficient matrix of the pre-merger state
    expected = 2 * math.sqrt(p * (1 - p)) * abs(math.sin((n - 1) * phi / 2))
    assert comp.concurrence(p, phi, n) == pytest.approx(expected, abs=1e-12)


@given(st.integers(0, 2**16), angles)
def test_concurrence_symmetries(m, phi):
    p = m / 2**16
    c = comp.concurrence(p, phi)
    assert comp.concurrence(1 - p, phi) == c
    assert comp.concurrence(p, math.pi - phi) == pytest.approx(c, abs=1e-15)


def test_generalized_visibility_examples():
    assert comp.generalized_visibility(0.5, math.pi / 2) == pytest.approx(0.0, abs=1e-8)
    assert comp.generalized_visibility(0.0, 0.77) == 1.0
    assert comp.generalized_visibility(0.5, 0.0) == pytest.approx(1.0, abs=1e-15)


@given(probs, angles)
def test_generalized_visibility_range_and_oracle(p, phi):
    v = comp.generalized_visibility(p, phi)
    assert abs(1 - 2 * p) - 1e-12 <= v <= 1 + 1e-12
    assert comp.generalized_visibility_oracle(p, phi, 3) == pytest.approx(v, abs=1e-12)


@given(probs, angles, st.sampled_from([1, 2, 3, 5]))
def test_duality_identity(p, phi, n):
    pt = comp.complementarity_point(p, phi, n)
    assert pt.distinguishability**2 + pt.gen_visibility**2 == pytest.approx(1.0, abs=1e-12)


def test_sensitivity_examples():
    assert comp.sensitivity(0.5, math.pi / 2, 3) == pytest.approx(1 / 3, abs=1e-15)
    assert comp.sensitivity(1.0, math.pi / 2, 3) == pytest.approx(1.0, abs=1e-15)
    assert comp.sensitivity(0.5, math.pi / 2, 1) == pytest.approx(1.0, abs=1e-12)
    m = StandardDetectorModel(0.6)
    assert comp.standard_sensitivity(m, math.pi / 2) == pytest.approx(m.visibility)


@given(probs, angles)
def test_sensitivity_oracle_matches_closed_form(p, phi):
    assert comp.sensitivity_oracle(p, phi, 3) == pytest.approx(comp.sensitivity_closed_form(p, phi), abs=1e-12)


@pytest.mark.parametrize("n", [1, 3])
@pytest.mark.parametrize("p,phi", [(0.5, 1.2), (0.7, 1.6), (0.9, 0.4), (0.3, 2.5)])
def test_sensitivity_finite_difference(n, p, phi):
    fd, richardson_gap = comp.sensitivity_fd(p, phi, n)
    exact = comp.sensitivity(p, phi, n)
    assert fd == pytest.approx(exact, rel=1e-6)
    assert richardson_gap < 1e-6


def test_customary_visibility_anomaly():
    v = comp.customary_visibility(0.5, 3)
    d = comp.concurrence(0.5, math.pi / 2)
    assert v == pytest.approx(1.0, abs=1e-12)
    assert d**2 + v**2 > 1.9


def test_identification_is_second_order():
    for d in (1e-2, 1e-3):
        assert comp.identification_residual(d) / d**2 == pytest.approx(0.5, rel=1e-2)
    assert comp.identification_residual(0.0) == pytest.approx(0, abs=1e-15)


@pytest.mark.parametrize("p,point", [(0.5, (1 / 3, 1.0)), (1.0, (1.0, 0.0)), (0.75, (2 / 3, math.sqrt(3) / 2))])
def test_ellipse_examples(p, point):
    pt = comp.complementarity_point(p, math.pi / 2)
    assert (pt.sensitivity, pt.distinguishability) == pytest.approx(point, abs=1e-15)
    assert comp.ellipse_lhs(pt) == pytest.approx(1.0, abs=1e-12)


@given(st.floats(0.5, 1.0, exclude_min=True, exclude_max=True), st.floats(-0.2, 0.2))
def test_ellipse_on_physical_manifold(p, dphi):
    pt = comp.complementarity_point(p, math.pi / 2 + dphi)
    assert comp.ellipse_lhs(pt) == pytest.approx(1.0, abs=1e-10)


def test_ellipse_singular_raises():
    pt = comp.complementarity_point(0.7, 0.0)
    with pytest.raises(SingularConfigurationError):
        comp.ellipse_lhs(pt)


def test_general_ellipse_examples():
    assert comp.general_ellipse_lhs(1 / 3, 1.0, 3) == pytest.approx(1.0, abs=1e-15)
    assert comp.general_ellipse_lhs(0.6, 0.8, 1) == pytest.approx(1.0, abs=1e-15)
    assert comp.general_ellipse_lhs(1.0, 0.0, math.inf) == pytest.approx(1.0, abs=1e-15)


@given(st.floats(-2, 2), st.floats(-2, 2))
def test_general_ellipse_n1_is_circle(s, d):
    assert comp.general_ellipse_lhs(s, d, 1) == s**2 + d**2


@given(st.floats(0.0, 1.0))
def test_n3_specialization(d):
    s = comp.ellipse_sensitivity(d, 3)
    assert (s - 1 / 3) ** 2 / (4 / 9) + d**2 == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("d", [0.0, 0.2, 0.5, 0.8, 0.95, 1.0])
def test_frontier_n3_on_ellipse_at_quarter_wave(d):
    pt = comp.frontier_point(d, 3)
    assert pt.at_phi == pytest.approx(math.pi / 2, abs=1e-6)
    assert pt.distinguishability == pytest.approx(d, abs=1e-12)
    assert comp.general_ellipse_lhs(pt.sensitivity, pt.distinguishability, 3) == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("d", [0.0, 0.3, 0.6, 0.95, 1.0])
def test_standard_frontier_is_unit_circle(d):
    pt = comp.standard_frontier_point(d)
    assert pt.at_phi == pytest.approx(math.pi / 2, abs=1e-6)
    assert comp.general_ellipse_lhs(pt.sensitivity, pt.distinguishability, 1) == pytest.approx(1.0, abs=1e-10)


def test_general_relation_bounds_other_ratios():
    # the located optimum never leaves the generalized ellipse; equality is only reached at N = 1, 3
    res = comp.general_ellipse_residuals((2, 5, 10), np.linspace(0.1, 0.9, 5))
    for n in (2, 5, 10):
        for d in np.linspace(0.1, 0.9, 5):
            pt = comp.frontier_point(float(d), n)
            assert comp.general_ellipse_lhs(pt.sensitivity, pt.distinguishability, n) <= 1 + 1e-10
        assert 0 < res[n] < 0.2
    assert comp.general_ellipse_residuals((3,), np.linspace(0.1, 0.9, 5))[3] < 1e-10


def test_golden_maximize_quadratic():
    x = comp.golden_maximize(lambda t: -(t - 0.3) ** 2, 0.0, 1.0)
    assert x == pytest.approx(0.3, abs=1e-7)


def test_figure2_curves_shape_and_endpoints():
    curves = comp.figure2_curves((1, 3, math.inf), 256)
    c1 = curves[1]
    assert len(c1.s) >= 256
    assert (c1.s[0], c1.d[0]) == pytest.approx((1.0, 0.0))
    assert (c1.s[-1], c1.d[-1]) == pytest.approx((0.0, 1.0), abs=1e-15)
    for n, c in curves.items():
        lhs = [comp.general_ellipse_lhs(s, d, n) for s, d in zip(c.s, c.d)]
        assert max(abs(x - 1) for x in lhs) < 1e-12


def test_figure2_areas():
    areas = {n: comp.first_quadrant_area(n) for n in (1, 2, 3, 5, 10, math.inf)}
    assert areas[1] == pytest.approx(math.pi / 4, abs=1e-9)
    assert areas[3] == pytest.approx(1 / 3 + math.pi / 6, abs=1e-9)
    seq = [areas[n] for n in (1, 2, 3, 5, 10, math.inf)]
    assert all(b > a for a, b in zip(seq, seq[1:]))
    for n, a in areas.items():
        assert a == pytest.approx(comp.first_quadrant_area_exact(n), abs=1e-9)


def test_frontier_curve_tracks_ellipse_n3():
    c = comp.frontier_curve(3, 33)
    assert np.allclose(c.s, comp.ellipse_sensitivity(c.d, 3), atol=1e-10)
