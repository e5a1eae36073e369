import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate

from tiemzi.errors import ParameterError
from tiemzi.wavepacket import (
    DecayConfig,
    GaussianPacket,
    decay_from_overlap,
    distinguishability_decay,
    momentum_density,
    overlap_integral,
    overlap_quadrature,
    reduced_distinguishability,
)

PACKET = GaussianPacket(center_k=5.0, width_k=0.4)


def test_density_peak_at_center():
    ks = np.linspace(3, 7, 2001)
    assert ks[np.argmax(momentum_density(PACKET, ks))] == pytest.approx(5.0, abs=2e-3)


def test_density_unit_integral():
    val, _ = integrate.quad(lambda k: momentum_density(PACKET, k), -np.inf, np.inf, epsabs=1e-13)
    assert val == pytest.approx(1.0, abs=1e-9)


def test_density_width_convention():
    ratio = momentum_density(PACKET, 5.4) / momentum_density(PACKET, 5.0)
    assert ratio == pytest.approx(math.exp(-1), rel=1e-14)
    assert momentum_density(PACKET, 4.6) == pytest.approx(momentum_density(PACKET, 5.4), rel=1e-14)


def test_coherence_predicate():
    assert PACKET.is_coherent_over(0.2)
    assert not PACKET.is_coherent_over(1.0)


def test_decay_examples():
    assert distinguishability_decay(DecayConfig(1.0, 0.0), 3.0) == 1.0
    assert distinguishability_decay(DecayConfig(1.0, 2.0), 2.0) == pytest.approx(0.367879, abs=1e-6)
    assert distinguishability_decay(DecayConfig(1.0, 2.0), math.inf) == 1.0
    assert distinguishability_decay(DecayConfig(1.0, 2.0), 1e12) == pytest.approx(1.0, abs=1e-20)


@pytest.mark.parametrize("w", [0.0, -1.0])
def test_decay_rejects_bad_width(w):
    with pytest.raises(ParameterError):
        distinguishability_decay(DecayConfig(), w)


@given(st.floats(0.1, 5), st.floats(0.0, 10), st.floats(0.1, 10))
def test_decay_scale_invariance(a, length, w):
    one = distinguishability_decay(DecayConfig(a, length), w)
    two = distinguishability_decay(DecayConfig(a, 2 * length), 2 * w)
    assert two == pytest.approx(one, rel=1e-12, abs=1e-300)


def test_decay_monotone_in_length():
    vals = [distinguishability_decay(DecayConfig(0.7, length), 1.3) for length in np.linspace(0, 5, 50)]
    assert all(b < a for a, b in zip(vals, vals[1:]))


def test_overlap_identical_zero_shift():
    assert overlap_integral(PACKET, PACKET, 0.0) == pytest.approx(1.0, abs=1e-15)


def test_overlap_one_width_shift_matches_quadrature():
    w = PACKET.spatial_width
    closed = overlap_integral(PACKET, PACKET, w)
    assert abs(closed) == pytest.approx(math.exp(-0.5), rel=1e-13)
    quad = overlap_quadrature(PACKET, PACKET, w)
    assert abs(closed - quad) < 1e-9


@pytest.mark.parametrize("p2,shift", [
    (GaussianPacket(5.0, 0.4), 1.7),
    (GaussianPacket(6.0, 0.4), 0.0),
    (GaussianPacket(4.5, 0.8), -2.3),
    (GaussianPacket(15.0, 0.25), 3.0),
])
def test_overlap_closed_form_vs_quadrature(p2, shift):
    assert abs(overlap_integral(PACKET, p2, shift) - overlap_quadrature(PACKET, p2, shift)) < 1e-9


def test_overlap_bounded_and_monotone():
    shifts = np.linspace(0, 30, 60)
    mags = [abs(overlap_integral(PACKET, PACKET, s)) for s in shifts]
    assert all(0 <= m <= 1 + 1e-15 for m in mags)
    assert all(b < a for a, b in zip(mags, mags[1:]) if a > 1e-300)


def test_overlap_disjoint_packets():
    assert abs(overlap_integral(PACKET, PACKET, 20 * PACKET.spatial_width)) < 1e-12


def test_log_overlap_is_linear_in_shift_squared():
    shifts = np.linspace(0.1, 2.0, 20) * PACKET.spatial_width
    y = np.log([abs(overlap_quadrature(PACKET, PACKET, s)) for s in shifts])
    x = shifts**2
    slope, icpt = np.polyfit(x, y, 1)
    r2 = 1 - np.sum((y - (slope * x + icpt)) ** 2) / np.sum((y - y.mean()) ** 2)
    assert r2 > 0.9999


@given(st.floats(0.2, 3), st.floats(0, 4), st.floats(0.05, 2))
def test_overlap_shift_model_reproduces_decay(a, length, width_k):
    packet = GaussianPacket(3.0, width_k)
    cfg = DecayConfig(a, length)
    expected = distinguishability_decay(cfg, packet.spatial_width)
    assert decay_from_overlap(cfg, packet) == pytest.approx(expected, rel=1e-12, abs=1e-300)


def test_reduced_distinguishability():
    assert reduced_distinguishability(0.8, DecayConfig(1, 1), 1) == pytest.approx(0.8 / math.e)
