"""Detector click probabilities.

Closed forms are used only in the two regimes where they are known
(blind clicks at N=3 for any p; internal-resolved channels at N=3, p=1/2 in the
Ramsey basis). Every other configuration goes through the state-vector oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import RAMSEY, InternalBasis, TieParams
from .mzi import InterferometerConfig, arm_states, merge_at_bs2, propagate

PORTS = ("+", "-")
OUTCOMES = ("up", "down")
CHANNELS = (("+", "up"), ("+", "down"), ("-", "up"), ("-", "down"))


@dataclass(frozen=True)
class ChannelProbabilities:
    p_plus_up: float
    p_plus_down: float
    p_minus_up: float
    p_minus_down: float
    pa_up: float
    pb_up: float
    pa_down: float
    pb_down: float
    pab_up: float
    pab_down: float

    def channel(self, port: str, outcome: str) -> float:
        return getattr(self, f"p_{'plus' if port == '+' else 'minus'}_{outcome}")

    def single_arm(self, path: str, outcome: str) -> float:
        return getattr(self, f"p{path.lower()}_{outcome}")

    def interference(self, outcome: str) -> float:
        return getattr(self, f"pab_{outcome}")

    def channels(self) -> tuple[float, float, float, float]:
        """Four channel probabilities in ``CHANNELS`` order."""
        return self.p_plus_up, self.p_plus_down, self.p_minus_up, self.p_minus_down

    def joint(self) -> tuple[float, float, float, float]:
        """Joint (path, internal) probabilities right before BS2: A-up, B-up, A-down, B-down."""
        return self.pa_up, self.pb_up, self.pa_down, self.pb_down

    @property
    def p_plus(self) -> float:
        return self.p_plus_up + self.p_plus_down

    @property
    def p_minus(self) -> float:
        return self.p_minus_up + self.p_minus_down


def _from_arm_terms(pa_up, pb_up, pab_up, pa_down, pb_down, pab_down) -> ChannelProbabilities:
    return ChannelProbabilities(
        p_plus_up=(pa_up + pb_up + pab_up) / 2,
        p_plus_down=(pa_down + pb_down + pab_down) / 2,
        p_minus_up=(pa_up + pb_up - pab_up) / 2,
        p_minus_down=(pa_down + pb_down - pab_down) / 2,
        pa_up=pa_up, pb_up=pb_up, pa_down=pa_down, pb_down=pb_down,
        pab_up=pab_up, pab_down=pab_down,
    )


def blind_probabilities_closed_form(p: float, phi: float) -> tuple[float, float]:
    """N=3 click probabilities when the internal state is ignored."""
    x = (1 - p) * math.cos(phi) + p * math.cos(3 * phi)
    return 0.5 * (1 + x), 0.5 * (1 - x)


def oracle_blind_probabilities(params: TieParams, cfg: InterferometerConfig) -> tuple[float, float]:
    out = merge_at_bs2(propagate(params, cfg))
    return out.norm2("+"), out.norm2("-")


def blind_probabilities(params: TieParams, cfg: InterferometerConfig) -> tuple[float, float]:
    if cfg.ratio_n == 3 and params.ratio_n == 3:
        return blind_probabilities_closed_form(params.p, cfg.phi)
    return oracle_blind_probabilities(params, cfg)


def channel_probabilities_closed_form(phi_a: float, phi_b: float) -> ChannelProbabilities:
    """Internal-resolved channels for p=1/2, N=3, Ramsey basis.

    ``phi_a``/``phi_b`` are the effective level-1 arm phases. The down-channel
    terms flip the sign of every cosine except cos(phi) and cos(3 phi).
    """
    phi = phi_a - phi_b
    c1, c3 = math.cos(phi), math.cos(3 * phi)
    cross_b = math.cos(3 * phi_b - phi_a)
    cross_a = math.cos(3 * phi_a - phi_b)
    ca2, cb2 = math.cos(2 * phi_a), math.cos(2 * phi_b)
    return _from_arm_terms(
        pa_up=0.25 * (1 + ca2),
        pb_up=0.25 * (1 + cb2),
        pab_up=0.25 * (c1 + c3 + cross_b + cross_a),
        pa_down=0.25 * (1 - ca2),
        pb_down=0.25 * (1 - cb2),
        pab_down=0.25 * (c1 + c3 - cross_b - cross_a),
    )


def oracle_channel_probabilities(
    params: TieParams, cfg: InterferometerConfig, basis: InternalBasis = RAMSEY
) -> ChannelProbabilities:
    """Brute-force projections of the propagated state vector. No trigonometry."""
    state = propagate(params, cfg)
    psi_a, psi_b = arm_states(state)
    out = merge_at_bs2(state)
    terms = {}
    for s in OUTCOMES:
        v = basis.vector(s)
        plus = abs(np.vdot(v, out.psi_plus)) ** 2
        minus = abs(np.vdot(v, out.psi_minus)) ** 2
        terms[f"pa_{s}"] = abs(np.vdot(v, psi_a)) ** 2 / 2
        terms[f"pb_{s}"] = abs(np.vdot(v, psi_b)) ** 2 / 2
        terms[f"pab_{s}"] = plus - minus
        terms[f"p_plus_{s}"] = plus
        terms[f"p_minus_{s}"] = minus
    return ChannelProbabilities(**{k: float(v) for k, v in terms.items()})


def channel_probabilities(
    params: TieParams, cfg: InterferometerConfig, basis: InternalBasis = RAMSEY
) -> ChannelProbabilities:
    if params.p == 0.5 and params.ratio_n == 3 and cfg.ratio_n == 3 and basis.is_ramsey():
        return channel_probabilities_closed_form(cfg.phi_a1, cfg.phi_b1)
    return oracle_channel_probabilities(params, cfg, basis)


def count_sign_changes(values) -> int:
    """Sign changes along a sampled curve, skipping exact zeros."""
    s = np.sign(np.asarray(values, dtype=float))
    s = s[s != 0]
    return int(np.count_nonzero(s[1:] != s[:-1]))
