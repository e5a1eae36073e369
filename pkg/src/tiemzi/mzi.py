"""Balanced Mach-Zehnder propagation: BS1, free flight along both arms, BS2."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .core import FourState, TieParams, prepare_input
from .errors import ParameterError

SQRT_HALF = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class InterferometerConfig:
    """Arm phases in units of the level-1 wavenumber: phi = k1 * L.

    Mean phases and small deviations are kept apart because the inference
    layer reasons about the sign of the deviation around a fixed operating point.
    """

    mean_phi_a: float = math.pi / 2
    mean_phi_b: float = math.pi
    delta_phi_a: float = 0.0
    delta_phi_b: float = 0.0
    ratio_n: int = 3

    def __post_init__(self):
        for name in ("mean_phi_a", "mean_phi_b", "delta_phi_a", "delta_phi_b"):
            if not math.isfinite(getattr(self, name)):
                raise ParameterError(f"{name} must be finite")
        if int(self.ratio_n) != self.ratio_n or self.ratio_n < 1:
            raise ParameterError(f"ratio_n must be a positive integer, got {self.ratio_n!r}")
        object.__setattr__(self, "ratio_n", int(self.ratio_n))

    @property
    def phi_a1(self) -> float:
        return self.mean_phi_a + self.delta_phi_a

    @property
    def phi_b1(self) -> float:
        return self.mean_phi_b + self.delta_phi_b

    @property
    def phi(self) -> float:
        """Level-1 phase difference between the arms."""
        return self.phi_a1 - self.phi_b1

    def phases(self) -> tuple[float, float, float, float]:
        """(phi_A1, phi_A2, phi_B1, phi_B2) in basis order."""
        a, b, n = self.phi_a1, self.phi_b1, self.ratio_n
        return a, n * a, b, n * b

    def with_deltas(self, delta_phi_a=None, delta_phi_b=None) -> "InterferometerConfig":
        return replace(
            self,
            delta_phi_a=self.delta_phi_a if delta_phi_a is None else delta_phi_a,
            delta_phi_b=self.delta_phi_b if delta_phi_b is None else delta_phi_b,
        )


@dataclass(frozen=True, eq=False)
class OutputPair:
    psi_plus: np.ndarray
    psi_minus: np.ndarray

    def norm2(self, port: str) -> float:
        v = self.psi_plus if port == "+" else self.psi_minus
        return float(np.vdot(v, v).real)


def _check_ratio(params: TieParams, cfg: InterferometerConfig) -> None:
    if params.ratio_n != cfg.ratio_n:
        raise ParameterError(
            f"wavevector ratio mismatch: params has N={params.ratio_n}, "
            f"interferometer has N={cfg.ratio_n}"
        )


def beam_splitter_1(state: FourState) -> FourState:
    a, b = state.arm("A"), state.arm("B")
    return FourState(np.concatenate([(a + b) * SQRT_HALF, (a - b) * SQRT_HALF]))


def propagate(params: TieParams, cfg: InterferometerConfig) -> FourState:
    """State right before the beam merger.

    Amplitude on (X, j) is c_j * exp(i phi_Xj) / sqrt(2).
    """
    _check_ratio(params, cfg)
    split = beam_splitter_1(prepare_input(params))
    return FourState(split.amps * np.exp(1j * np.asarray(cfg.phases())))


def arm_states(state: FourState) -> tuple[np.ndarray, np.ndarray]:
    """Unnormalized per-arm internal vectors psi_Af, psi_Bf (unit norm each when balanced)."""
    return state.arm("A") / SQRT_HALF, state.arm("B") / SQRT_HALF


def merge_at_bs2(state: FourState) -> OutputPair:
    psi_a, psi_b = arm_states(state)
    return OutputPair((psi_a + psi_b) / 2.0, (psi_a - psi_b) / 2.0)


def output_pair(params: TieParams, cfg: InterferometerConfig) -> OutputPair:
    return merge_at_bs2(propagate(params, cfg))
