"""Path (x) internal pure states of a single two-level particle.

The four basis states are stored in the fixed order (A,1), (A,2), (B,1), (B,2):
arm A or B of the interferometer, internal level 1 or 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError

BASIS_LABELS = (("A", 1), ("A", 2), ("B", 1), ("B", 2))
NORM_TOL = 1e-12
ENERGY_RTOL = 1e-12


def _check_probability(p: float) -> None:
    if not (0.0 <= p <= 1.0) or math.isnan(p):
        raise ParameterError(f"p must lie in [0, 1], got {p!r}")


@dataclass(frozen=True)
class TieParams:
    """Entangled input: amplitude sqrt(1-p) on (k1, level 1), sqrt(p) on (k2, level 2).

    ``k2`` is always ``ratio_n * k1``; the ratio is the physically relevant
    quantity since every phase in the problem is ``k * L``.
    """

    p: float = 0.5
    k1: float = 1.0
    ratio_n: int = 3

    def __post_init__(self):
        _check_probability(self.p)
        if not (self.k1 > 0 and math.isfinite(self.k1)):
            raise ParameterError(f"k1 must be positive and finite, got {self.k1!r}")
        if int(self.ratio_n) != self.ratio_n or self.ratio_n < 1:
            raise ParameterError(f"ratio_n must be a positive integer, got {self.ratio_n!r}")
        object.__setattr__(self, "ratio_n", int(self.ratio_n))

    @property
    def k2(self) -> float:
        return self.ratio_n * self.k1

    @property
    def amplitudes(self) -> tuple[float, float]:
        return math.sqrt(1.0 - self.p), math.sqrt(self.p)


@dataclass(frozen=True)
class PhysicalParams:
    hbar: float = 1.0
    mass: float = 1.0
    eps1: float = 0.0
    eps2: float = 0.0
    total_energy: float | None = None

    def __post_init__(self):
        if not self.hbar > 0:
            raise ParameterError(f"hbar must be positive, got {self.hbar!r}")
        if not self.mass > 0:
            raise ParameterError(f"mass must be positive, got {self.mass!r}")


@dataclass(frozen=True)
class EnergyReport:
    passed: bool
    residual: float
    relative_residual: float
    e1: float
    e2: float


def branch_energy(k: float, eps: float, phys: PhysicalParams) -> float:
    return phys.hbar**2 * k**2 / (2.0 * phys.mass) + eps


def validate_energy(params: TieParams, phys: PhysicalParams) -> EnergyReport:
    """Check that both internal branches carry the same total energy.

    With ``phys.total_energy`` set, each branch must also match it.
    """
    e1 = branch_energy(params.k1, phys.eps1, phys)
    e2 = branch_energy(params.k2, phys.eps2, phys)
    residual = abs(e1 - e2)
    scale = max(abs(e1), abs(e2))
    rel = residual / scale if scale > 0 else residual
    passed = rel < ENERGY_RTOL
    if phys.total_energy is not None:
        e = phys.total_energy
        worst = max(abs(e1 - e), abs(e2 - e)) / max(abs(e), scale, 1e-300)
        passed = passed and worst < ENERGY_RTOL
    return EnergyReport(passed, residual, rel, e1, e2)


def matching_k2(k1: float, phys: PhysicalParams) -> float:
    """Wavenumber of the level-2 branch that conserves energy for a given k1."""
    k2sq = k1**2 + 2.0 * phys.mass * (phys.eps1 - phys.eps2) / phys.hbar**2
    if k2sq <= 0:
        raise ParameterError("no real k2 conserves energy for these level energies")
    return math.sqrt(k2sq)


@dataclass(frozen=True, eq=False)
class FourState:
    amps: np.ndarray

    def __post_init__(self):
        a = np.array(self.amps, dtype=complex).reshape(4)
        if not np.all(np.isfinite(a)):
            raise ParameterError("state amplitudes must be finite")
        a.setflags(write=False)
        object.__setattr__(self, "amps", a)

    def __getitem__(self, label: tuple[str, int]) -> complex:
        return complex(self.amps[BASIS_LABELS.index(label)])

    def arm(self, path: str) -> np.ndarray:
        """Internal-space components of one arm, unnormalized."""
        if path == "A":
            return self.amps[0:2]
        if path == "B":
            return self.amps[2:4]
        raise ParameterError(f"path must be 'A' or 'B', got {path!r}")

    @property
    def norm2(self) -> float:
        return float(np.vdot(self.amps, self.amps).real)

    def __eq__(self, other):
        return isinstance(other, FourState) and np.array_equal(self.amps, other.amps)

    def __hash__(self):
        return hash(self.amps.tobytes())


def inner_product(a: FourState, b: FourState) -> complex:
    """<a|b>, antilinear in the first argument."""
    return complex(np.vdot(a.amps, b.amps))


def prepare_input(params: TieParams) -> FourState:
    """Input state entering BS1 through the A port.

    The path is not yet split: all amplitude sits on arm A, real and non-negative.
    """
    c1, c2 = params.amplitudes
    return FourState([c1, c2, 0.0, 0.0])


@dataclass(frozen=True, eq=False)
class InternalBasis:
    up: np.ndarray = field(default_factory=lambda: np.array([1.0, 1.0]) / math.sqrt(2.0))
    down: np.ndarray = field(default_factory=lambda: np.array([1.0, -1.0]) / math.sqrt(2.0))

    def __post_init__(self):
        up = np.array(self.up, dtype=complex).reshape(2)
        down = np.array(self.down, dtype=complex).reshape(2)
        for name, v in (("up", up), ("down", down)):
            if abs(np.vdot(v, v).real - 1.0) > NORM_TOL:
                raise ParameterError(f"basis vector {name!r} is not normalized")
        if abs(np.vdot(up, down)) > NORM_TOL:
            raise ParameterError("basis vectors are not orthogonal")
        up.setflags(write=False)
        down.setflags(write=False)
        object.__setattr__(self, "up", up)
        object.__setattr__(self, "down", down)

    def vector(self, s: str) -> np.ndarray:
        if s == "up":
            return self.up
        if s == "down":
            return self.down
        raise ParameterError(f"internal outcome must be 'up' or 'down', got {s!r}")

    def is_ramsey(self) -> bool:
        return np.array_equal(self.up, RAMSEY.up) and np.array_equal(self.down, RAMSEY.down)

    @classmethod
    def rotated(cls, theta: float, chi: float = 0.0) -> "InternalBasis":
        """Arbitrary orthonormal basis parametrized by a Bloch-sphere angle pair."""
        c, s = math.cos(theta / 2), math.sin(theta / 2)
        ph = complex(math.cos(chi), math.sin(chi))
        return cls(np.array([c, s * ph]), np.array([-s * ph.conjugate(), c]))


RAMSEY = InternalBasis()
