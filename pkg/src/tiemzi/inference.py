"""Path and phase-sign guessing from output clicks, TIE versus in-arm detector."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .core import RAMSEY, InternalBasis, TieParams
from .detection import blind_probabilities, channel_probabilities
from .errors import ParameterError
from .mzi import InterferometerConfig

Port = Literal["+", "-"]
Outcome = Literal["up", "down"]

DEFAULT_PARAMS = TieParams(p=0.5, ratio_n=3)


@dataclass(frozen=True)
class CountStatistics:
    n_in: float
    delta_n_up: float
    delta_n_down: float
    n_tot_up: float
    n_tot_down: float


@dataclass(frozen=True)
class StandardDetectorModel:
    """In-arm which-path detector of distinguishability ``d_s``; visibility is derived."""

    d_s: float = 0.95

    def __post_init__(self):
        if not (0.0 <= self.d_s <= 1.0):
            raise ParameterError(f"d_s must lie in [0, 1], got {self.d_s!r}")

    @property
    def visibility(self) -> float:
        return math.sqrt(1.0 - self.d_s**2)

    def click_probabilities(self, phi: float) -> tuple[float, float]:
        x = self.visibility * math.cos(phi)
        return 0.5 + x / 2, 0.5 - x / 2


@dataclass(frozen=True)
class Guess:
    path: Literal["A", "B"]
    phase_sign: Literal["+", "-"]


@dataclass(frozen=True)
class ErrorPair:
    wrong_way: float
    wrong_phase: float


@dataclass(frozen=True)
class ComparisonRow:
    abs_delta_phi_a: float
    tie_wrong_way: float
    tie_wrong_phase: float
    std_wrong_way: float
    std_wrong_phase: float

    @property
    def tie_better_way(self) -> bool:
        return self.tie_wrong_way < self.std_wrong_way

    @property
    def tie_better_phase(self) -> bool:
        return self.tie_wrong_phase < self.std_wrong_phase

    @property
    def tie_dominates(self) -> bool:
        return self.tie_better_way and self.tie_better_phase


def expected_counts(
    params: TieParams,
    cfg: InterferometerConfig,
    basis: InternalBasis = RAMSEY,
    n_in: float = 1.0,
) -> CountStatistics:
    """Detector imbalance and totals per internal outcome for ``n_in`` particles."""
    if not n_in > 0:
        raise ParameterError(f"n_in must be positive, got {n_in!r}")
    cp = channel_probabilities(params, cfg, basis)
    return CountStatistics(
        n_in=n_in,
        delta_n_up=n_in * cp.pab_up,
        delta_n_down=n_in * cp.pab_down,
        n_tot_up=n_in * (cp.pa_up + cp.pb_up),
        n_tot_down=n_in * (cp.pa_down + cp.pb_down),
    )


def tie_guess_rule(port: Port, outcome: Outcome) -> Guess:
    """Guess at the operating point phi_A = pi/2, phi_B = pi.

    Up means arm B (A is nearly dark in the up channel), down means arm A.
    The up-channel imbalance goes as -delta_phi_A, so a '-' click votes for a
    positive deviation.
    """
    if outcome not in ("up", "down"):
        raise ParameterError(f"unknown internal outcome {outcome!r}")
    if port not in ("+", "-"):
        raise ParameterError(f"unknown detector {port!r}")
    return Guess("B" if outcome == "up" else "A", "+" if port == "-" else "-")


def _wrong_phase_port(delta_phi_a: float) -> Port:
    # zero deviation is scored as positive: a '+' click is then the wrong vote
    return "+" if delta_phi_a >= 0 else "-"


def tie_error_probabilities(
    cfg: InterferometerConfig, params: TieParams = DEFAULT_PARAMS
) -> ErrorPair:
    """Exact per-particle error probabilities of ``tie_guess_rule``.

    Wrong way is P(A, up) + P(B, down). Wrong phase is the probability that
    the detector voting for the opposite sign of delta_phi_A fires.
    """
    cp = channel_probabilities(params, cfg)
    p_plus, p_minus = blind_probabilities(params, cfg)
    wrong_phase = p_plus if _wrong_phase_port(cfg.delta_phi_a) == "+" else p_minus
    return ErrorPair(cp.pa_up + cp.pb_down, wrong_phase)


def wrong_way_distinguishability(cfg: InterferometerConfig, params: TieParams = DEFAULT_PARAMS) -> float:
    """Distinguishability implied by the wrong-way rate, 1 - 2 P_wrong_way."""
    return 1.0 - 2.0 * tie_error_probabilities(cfg, params).wrong_way


def standard_error_probabilities(model: StandardDetectorModel, delta_phi: float) -> ErrorPair:
    return ErrorPair(
        (1.0 - model.d_s) / 2.0,
        0.5 * (1.0 - model.visibility * abs(delta_phi)),
    )


def compare_strategies(
    cfg: InterferometerConfig,
    model: StandardDetectorModel,
    delta_phi_grid,
    params: TieParams = DEFAULT_PARAMS,
) -> list[ComparisonRow]:
    rows = []
    for d in np.abs(np.asarray(delta_phi_grid, dtype=float)):
        tie = tie_error_probabilities(cfg.with_deltas(delta_phi_a=float(d)), params)
        std = standard_error_probabilities(model, float(d))
        rows.append(ComparisonRow(float(d), tie.wrong_way, tie.wrong_phase, std.wrong_way, std.wrong_phase))
    return rows

