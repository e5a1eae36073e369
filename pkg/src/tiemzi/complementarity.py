"""Entanglement and duality measures of the two-path, two-level state.

Phases here are the level-1 arm difference ``phi = phi_A1 - phi_B1``. Oracles
build the explicit state with phi_B1 = 0 and phi_A1 = phi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate, optimize

from .core import TieParams
from .detection import oracle_blind_probabilities
from .errors import ParameterError, SingularConfigurationError
from .inference import StandardDetectorModel, wrong_way_distinguishability
from .mzi import InterferometerConfig, arm_states, merge_at_bs2, propagate

SIGMA_Y = np.array([[0, -1j], [1j, 0]])
SPIN_FLIP = np.kron(SIGMA_Y, SIGMA_Y)
GOLDEN_TOL = 1e-10


@dataclass(frozen=True)
class ComplementarityPoint:
    distinguishability: float
    gen_visibility: float
    concurrence: float
    sensitivity: float
    at_p: float
    at_phi: float
    ratio_n: int


def _explicit_state(p: float, phi: float, ratio_n: int):
    params = TieParams(p=p, ratio_n=ratio_n)
    return params, InterferometerConfig(phi, 0.0, 0.0, 0.0, ratio_n)


def concurrence_closed_form(p: float, phi: float) -> float:
    return 2.0 * math.sqrt(p * (1.0 - p)) * abs(math.sin(phi))


def concurrence_oracle(p: float, phi: float, ratio_n: int = 3) -> float:
    """|<psi| sy(x)sy |psi*>| on the port (x) internal state after BS2."""
    params, cfg = _explicit_state(p, phi, ratio_n)
    out = merge_at_bs2(propagate(params, cfg))
    psi = np.concatenate([out.psi_plus, out.psi_minus])
    return float(abs(np.vdot(psi, SPIN_FLIP @ psi.conj())))


def concurrence(p: float, phi: float, ratio_n: int = 3) -> float:
    if not 0.0 <= p <= 1.0:
        raise ParameterError(f"p must lie in [0, 1], got {p!r}")
    if ratio_n == 3:
        return concurrence_closed_form(p, phi)
    return concurrence_oracle(p, phi, ratio_n)


def generalized_visibility_closed_form(p: float, phi: float) -> float:
    v2 = (1 - p) ** 2 + p**2 + 2 * p * (1 - p) * math.cos(2 * phi)
    return math.sqrt(max(v2, 0.0))


def generalized_visibility_oracle(p: float, phi: float, ratio_n: int = 3) -> float:
    """Twice the off-diagonal modulus of the reduced path density matrix."""
    params, cfg = _explicit_state(p, phi, ratio_n)
    psi_a, psi_b = arm_states(propagate(params, cfg))
    return float(abs(np.vdot(psi_b, psi_a)))


def generalized_visibility(p: float, phi: float, ratio_n: int = 3) -> float:
    if not 0.0 <= p <= 1.0:
        raise ParameterError(f"p must lie in [0, 1], got {p!r}")
    if ratio_n == 3:
        return generalized_visibility_closed_form(p, phi)
    return generalized_visibility_oracle(p, phi, ratio_n)


def sensitivity_closed_form(p: float, phi: float) -> float:
    return abs((p - 1) * math.sin(phi) - 3 * p * math.sin(3 * phi)) / 3


def _dplus_dphi(p: float, phi: float, ratio_n: int) -> float:
    # analytic derivative of ||psi_+||^2 w.r.t. phi_A1 on the explicit state
    params, cfg = _explicit_state(p, phi, ratio_n)
    state = propagate(params, cfg)
    psi_a, psi_b = arm_states(state)
    dpsi_a = 1j * np.array([1.0, ratio_n]) * psi_a
    plus = (psi_a + psi_b) / 2
    return float(2 * np.vdot(plus, dpsi_a / 2).real)


def sensitivity_oracle(p: float, phi: float, ratio_n: int = 3) -> float:
    """|2 dP_+ / (k_max dL)| with k_max = N k1, i.e. (2/N)|dP_+/dphi|."""
    return 2.0 * abs(_dplus_dphi(p, phi, ratio_n)) / ratio_n


def sensitivity_fd(p: float, phi: float, ratio_n: int = 3, h: float = 1e-6) -> tuple[float, float]:
    """Central-difference sensitivity with one Richardson step.

    Returns (richardson estimate, |estimate - plain central difference|).
    """
    params = TieParams(p=p, ratio_n=ratio_n)

    def plus(x):
        return oracle_blind_probabilities(params, InterferometerConfig(x, 0.0, 0.0, 0.0, ratio_n))[0]

    d_h = (plus(phi + h) - plus(phi - h)) / (2 * h)
    d_h2 = (plus(phi + h / 2) - plus(phi - h / 2)) / h
    rich = (4 * d_h2 - d_h) / 3
    return 2.0 * abs(rich) / ratio_n, abs(rich - d_h) * 2.0 / ratio_n


def sensitivity(p: float, phi: float, ratio_n: int = 3) -> float:
    if ratio_n == 3:
        return sensitivity_closed_form(p, phi)
    return sensitivity_oracle(p, phi, ratio_n)


def standard_sensitivity(model: StandardDetectorModel, phi: float) -> float:
    """Same derivative measure for the in-arm detector fringe, k1 = k2."""
    return model.visibility * abs(math.sin(phi))


def complementarity_point(p: float, phi: float, ratio_n: int = 3) -> ComplementarityPoint:
    """Duality measures at one (p, phi). Distinguishability is identified with the concurrence."""
    c = concurrence(p, phi, ratio_n)
    return ComplementarityPoint(
        distinguishability=c,
        gen_visibility=generalized_visibility(p, phi, ratio_n),
        concurrence=c,
        sensitivity=sensitivity(p, phi, ratio_n),
        at_p=p,
        at_phi=phi,
        ratio_n=ratio_n,
    )


def identification_residual(delta_phi_a: float) -> float:
    """|C - (1 - 2 P_wrong_way)| at p=1/2, N=3 around phi_A = pi/2, phi_B = pi.

    Vanishes to second order in the deviation.
    """
    cfg = InterferometerConfig(delta_phi_a=delta_phi_a)
    return abs(concurrence(0.5, cfg.phi) - wrong_way_distinguishability(cfg))


def customary_visibility(p: float = 0.5, ratio_n: int = 3, points: int = 4096) -> float:
    """max over phi of P_+ - P_-, the global fringe contrast."""
    params = TieParams(p=p, ratio_n=ratio_n)
    best = -1.0
    for phi in np.linspace(0.0, 2 * math.pi, points, endpoint=False):
        plus, minus = oracle_blind_probabilities(params, InterferometerConfig(float(phi), 0.0, 0.0, 0.0, ratio_n))
        best = max(best, plus - minus)
    return best


def ellipse_lhs(point: ComplementarityPoint, phi: float | None = None) -> float:
    """Phase-explicit N=3 ellipse in the (S, D) plane; equals 1 on the physical manifold."""
    phi = point.at_phi if phi is None else phi
    s1, s3 = math.sin(phi), math.sin(3 * phi)
    axis2 = (s1 - 3 * s3) ** 2 / 36
    if abs(s1) < 1e-15 or axis2 < 1e-30:
        raise SingularConfigurationError(f"ellipse relation is singular at phi={phi!r}")
    return (point.sensitivity + (s1 + 3 * s3) / 6) ** 2 / axis2 + point.distinguishability**2 / s1**2


def ellipse_center_axis(ratio_n: float) -> tuple[float, float]:
    """(center, semi-axis) along S of the generalized relation; ratio_n may be math.inf."""
    if ratio_n < 1:
        raise ParameterError(f"ratio_n must be >= 1, got {ratio_n!r}")
    if math.isinf(ratio_n):
        return 0.5, 0.5
    return (ratio_n - 1) / (2 * ratio_n), (ratio_n + 1) / (2 * ratio_n)


def general_ellipse_lhs(s: float, d: float, ratio_n: float) -> float:
    if ratio_n == 1:
        return s**2 + d**2
    center, axis = ellipse_center_axis(ratio_n)
    return (s - center) ** 2 / axis**2 + d**2


def ellipse_sensitivity(d, ratio_n: float):
    """Upper branch S(D) of the generalized relation."""
    center, axis = ellipse_center_axis(ratio_n)
    return center + axis * np.sqrt(np.clip(1.0 - np.asarray(d, dtype=float) ** 2, 0.0, None))


def golden_maximize(objective: Callable[[float], float], lo: float, hi: float,
                    tol: float = GOLDEN_TOL, scan: int = 64) -> float:
    """Argmax on [lo, hi]: coarse scan to bracket, then golden-section refinement."""
    if hi - lo <= tol:
        return 0.5 * (lo + hi)
    xs = np.linspace(lo, hi, scan + 1)
    vals = [objective(float(x)) for x in xs]
    if max(vals) - min(vals) <= tol:
        return 0.5 * (lo + hi)
    i = int(np.argmax(vals))
    a, c = float(xs[max(i - 1, 0)]), float(xs[min(i + 1, scan)])
    if i in (0, scan):
        return float(xs[i])
    res = optimize.minimize_scalar(lambda x: -objective(x), bracket=(a, float(xs[i]), c),
                                   method="golden", tol=tol)
    x = float(res.x)
    return x if lo <= x <= hi and objective(x) >= vals[i] else float(xs[i])


def _p_for_distinguishability(d: float, phi: float, ratio_n: int) -> float:
    """Upper root p >= 1/2 of 2 sqrt(p(1-p)) |sin((N-1) phi / 2)| = d."""
    g = abs(math.sin((ratio_n - 1) * phi / 2))
    x = min((d / g) ** 2, 1.0)
    return 0.5 * (1 + math.sqrt(1 - x))


def frontier_point(d: float, ratio_n: int = 3) -> ComplementarityPoint:
    """TIE point of largest sensitivity at fixed distinguishability ``d``.

    p >= 1/2 is solved from ``d`` for each trial phase and the phase is
    optimized over the feasible part of (0, pi).
    """
    if not 0.0 <= d <= 1.0:
        raise ParameterError(f"distinguishability must lie in [0, 1], got {d!r}")
    if ratio_n < 2:
        raise ParameterError("TIE frontier needs ratio_n >= 2; use standard_frontier_point for N=1")
    # feasible phases satisfy |sin((N-1) phi / 2)| >= d; scan the whole (0, pi)
    eps = 1e-9

    def objective(phi):
        g = abs(math.sin((ratio_n - 1) * phi / 2))
        if g < d or g == 0.0:
            return -1.0 - (d - g)
        return sensitivity(_p_for_distinguishability(d, phi, ratio_n), phi, ratio_n)

    if ratio_n == 3:
        lo = math.asin(min(d, 1.0))
        phi = golden_maximize(objective, max(lo, eps), math.pi - max(lo, eps))
    else:
        phi = golden_maximize(objective, eps, math.pi - eps, scan=2048)
    p = _p_for_distinguishability(d, phi, ratio_n)
    return complementarity_point(p, phi, ratio_n)


def standard_frontier_point(d_s: float) -> ComplementarityPoint:
    """In-arm detector with distinguishability ``d_s`` at its most sensitive phase."""
    model = StandardDetectorModel(d_s)
    phi = golden_maximize(lambda x: standard_sensitivity(model, x), 1e-9, math.pi - 1e-9)
    return ComplementarityPoint(
        distinguishability=d_s,
        gen_visibility=model.visibility,
        concurrence=0.0,
        sensitivity=standard_sensitivity(model, phi),
        at_p=0.0,
        at_phi=phi,
        ratio_n=1,
    )


def optimal_point(d: float, ratio_n: int) -> ComplementarityPoint:
    return standard_frontier_point(d) if ratio_n == 1 else frontier_point(d, ratio_n)


def general_ellipse_residuals(ratio_values=(2, 3, 5, 10), d_grid=None) -> dict[int, float]:
    """max |lhs - 1| of the generalized relation along the located frontier, per N."""
    d_grid = np.linspace(0.05, 0.95, 19) if d_grid is None else d_grid
    out = {}
    for n in ratio_values:
        worst = 0.0
        for d in d_grid:
            pt = optimal_point(float(d), n)
            worst = max(worst, abs(general_ellipse_lhs(pt.sensitivity, pt.distinguishability, n) - 1))
        out[n] = worst
    return out


@dataclass(frozen=True, eq=False)
class Curve:
    ratio_n: float
    s: np.ndarray
    d: np.ndarray
    area: float


def first_quadrant_area(ratio_n: float) -> float:
    """Area under the upper branch S(D) for D in [0, 1], by adaptive quadrature."""
    val, _ = integrate.quad(lambda d: float(ellipse_sensitivity(d, ratio_n)), 0.0, 1.0,
                            epsabs=1e-13, epsrel=1e-13, limit=200)
    return val


def first_quadrant_area_exact(ratio_n: float) -> float:
    center, axis = ellipse_center_axis(ratio_n)
    return center + axis * math.pi / 4


def figure2_curves(n_values=(1, 3, math.inf), points: int = 256) -> dict[float, Curve]:
    """Sampled (S, D) relation curves and their first-quadrant areas.

    Sampling is uniform in the ellipse angle so both endpoints (D=1 and D=0)
    are hit exactly.
    """
    if points < 2:
        raise ParameterError("need at least two points per curve")
    theta = np.linspace(0.0, math.pi / 2, points)
    out = {}
    for n in n_values:
        center, axis = ellipse_center_axis(n)
        d = np.sin(theta)
        s = center + axis * np.cos(theta)
        d[-1] = 1.0
        s[-1] = center
        out[n] = Curve(n, s, d, first_quadrant_area(n))
    return out


def frontier_curve(ratio_n: int, points: int = 64) -> Curve:
    """Located optimum (S, D) pairs over a grid of distinguishabilities."""
    ds = np.linspace(0.0, 1.0, points)
    pts = [optimal_point(float(d), ratio_n) for d in ds]
    s = np.array([pt.sensitivity for pt in pts])
    d = np.array([pt.distinguishability for pt in pts])
    return Curve(ratio_n, s, d, float(integrate.trapezoid(s, d)))
