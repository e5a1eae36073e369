"""Finite-width gaussian packets and the resulting loss of distinguishability.

A packet with momentum amplitude f(k) ~ exp(-(k - k0)^2 / width_k^2) has
position amplitude ~ exp(-x^2 / w^2) exp(i k0 x) with w = 2 / width_k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import ParameterError

COHERENCE_THRESHOLD = 0.1


@dataclass(frozen=True)
class GaussianPacket:
    center_k: float
    width_k: float

    def __post_init__(self):
        if not (self.width_k > 0 and math.isfinite(self.width_k)):
            raise ParameterError(f"width_k must be positive and finite, got {self.width_k!r}")

    @property
    def spatial_width(self) -> float:
        return 2.0 / self.width_k

    def is_coherent_over(self, length: float) -> bool:
        """True when width_k * L is well below one, i.e. the packet acts as a plane wave."""
        return self.width_k * length < COHERENCE_THRESHOLD

    def amplitude(self, x):
        """Unit-norm position amplitude centred at x = 0."""
        w = self.spatial_width
        x = np.asarray(x, dtype=float)
        return (2.0 / (math.pi * w * w)) ** 0.25 * np.exp(-(x / w) ** 2 + 1j * self.center_k * x)


@dataclass(frozen=True)
class DecayConfig:
    a_const: float = 1.0
    mzi_length: float = 0.0

    def __post_init__(self):
        if not self.a_const > 0:
            raise ParameterError(f"a_const must be positive, got {self.a_const!r}")
        if not self.mzi_length >= 0:
            raise ParameterError(f"mzi_length must be non-negative, got {self.mzi_length!r}")

    @property
    def shift_per_length(self) -> float:
        # identical packets shifted by s overlap as exp(-s^2 / (2 w^2))
        return math.sqrt(2.0 * self.a_const)


def momentum_density(packet: GaussianPacket, k):
    """Unit-integral gaussian in k with the exp(-(k - k0)^2 / width_k^2) profile."""
    k = np.asarray(k, dtype=float)
    return np.exp(-((k - packet.center_k) / packet.width_k) ** 2) / (packet.width_k * math.sqrt(math.pi))


def distinguishability_decay(cfg: DecayConfig, w: float) -> float:
    if not w > 0:
        raise ParameterError(f"packet length w must be positive, got {w!r}")
    if math.isinf(w):
        return 1.0
    return math.exp(-cfg.a_const * cfg.mzi_length**2 / w**2)


def overlap_integral(p1: GaussianPacket, p2: GaussianPacket, relative_shift: float) -> complex:
    """<p1 | p2 translated by relative_shift>, gaussian closed form."""
    w1, w2, s = p1.spatial_width, p2.spatial_width, relative_shift
    a = 1 / w1**2 + 1 / w2**2
    b = 2 * s / w2**2 + 1j * (p2.center_k - p1.center_k)
    c = -(s**2) / w2**2 - 1j * p2.center_k * s
    norm = math.sqrt(2.0 / (math.pi * w1 * w2))
    return complex(norm * math.sqrt(math.pi / a) * np.exp(b * b / (4 * a) + c))


def overlap_quadrature(p1: GaussianPacket, p2: GaussianPacket, relative_shift: float) -> complex:
    """Same overlap by adaptive quadrature on a window covering both packets."""
    half = 12.0 * max(p1.spatial_width, p2.spatial_width)
    lo, hi = min(0.0, relative_shift) - half, max(0.0, relative_shift) + half

    def integrand(x):
        return np.conj(p1.amplitude(x)) * p2.amplitude(x - relative_shift)

    opts = dict(epsabs=1e-14, epsrel=1e-12, limit=400)
    re, _ = integrate.quad(lambda x: float(integrand(x).real), lo, hi, **opts)
    im, _ = integrate.quad(lambda x: float(integrand(x).imag), lo, hi, **opts)
    return complex(re, im)


def decay_from_overlap(cfg: DecayConfig, packet: GaussianPacket, shift_per_length: float | None = None) -> float:
    """|overlap| of a packet with itself displaced by beta * L.

    With the default beta = sqrt(2 A) this reproduces exp(-A L^2 / w^2).
    """
    beta = cfg.shift_per_length if shift_per_length is None else shift_per_length
    return abs(overlap_integral(packet, packet, beta * cfg.mzi_length))


def reduced_distinguishability(d: float, cfg: DecayConfig, w: float) -> float:
    return d * distinguishability_decay(cfg, w)
