"""Seeded sampling of detection events and empirical error rates.

Ground truth (arm, internal outcome) comes from a projective measurement in the
{A, B} x {up, down} basis just before BS2, i.e. the joint single-arm
probabilities. That is a simulation convention: the click itself cannot be
conditioned on the arm when the two arms interfere, so two bookkeeping paths
exist.

``"arm"``
    sample (arm, s) from the joint, then the detector from the arm-restricted
    amplitudes <s|psi_+-> (renormalized). Only valid when the interference
    terms vanish.
``"observable"``
    sample s from its marginal, then the arm and the detector independently
    given s. Reproduces both the joint single-arm terms and the four channel
    probabilities exactly.

``"auto"`` picks ``"arm"`` when every interference term is below
``ARM_MODE_TOL`` and ``"observable"`` otherwise.

Streams: numpy ``Philox`` (counter-based), one stream per worker spawned from
``SeedSequence(seed)``; output depends only on (seed, n_trials, workers).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from .core import RAMSEY, InternalBasis, TieParams
from .detection import CHANNELS, ChannelProbabilities, channel_probabilities
from .errors import ParameterError
from .inference import tie_guess_rule
from .mzi import InterferometerConfig, arm_states, propagate

ARM_MODE_TOL = 1e-12
CHUNK = 1 << 20
Z95 = 1.96

# joint cell order: (A, up), (B, up), (A, down), (B, down)
JOINT_CELLS = (("A", "up"), ("B", "up"), ("A", "down"), ("B", "down"))


@dataclass(frozen=True)
class TrialRecord:
    truth_path: str
    truth_internal: str
    detector: str
    guess_path: str
    guess_phase_sign: str


@dataclass(frozen=True)
class CampaignStats:
    n_trials: int
    wrong_way_rate: float
    wrong_phase_rate: float
    ci_halfwidth_95: float
    ci_phase_halfwidth_95: float
    seed: int
    workers: int
    bookkeeping: str
    channel_counts: dict = field(default_factory=dict)
    joint_counts: dict = field(default_factory=dict)

    def channel_frequency(self, port: str, outcome: str) -> float:
        return self.channel_counts[(port, outcome)] / self.n_trials


def make_streams(seed: int, workers: int) -> list[np.random.Generator]:
    children = np.random.SeedSequence(seed).spawn(workers)
    return [np.random.Generator(np.random.Philox(c)) for c in children]


def _normalized(probs) -> np.ndarray:
    p = np.clip(np.asarray(probs, dtype=float), 0.0, None)
    return p / p.sum()


def _conditionals(cp: ChannelProbabilities):
    """P(s), P(A | s) and P(+ | s) for s in (up, down)."""
    p_s = _normalized([cp.pa_up + cp.pb_up, cp.pa_down + cp.pb_down])
    p_a, p_plus = [], []
    for s in ("up", "down"):
        tot = cp.pa_up + cp.pb_up if s == "up" else cp.pa_down + cp.pb_down
        if tot > 0:
            p_a.append(min(max(cp.single_arm("A", s) / tot, 0.0), 1.0))
            p_plus.append(min(max(cp.channel("+", s) / tot, 0.0), 1.0))
        else:
            p_a.append(0.5)
            p_plus.append(0.5)
    return p_s, np.array(p_a), np.array(p_plus)


def arm_restricted_plus(params: TieParams, cfg: InterferometerConfig, basis: InternalBasis = RAMSEY) -> np.ndarray:
    """P(+ | arm, s) from the arm-X contribution to <s|psi_+->, renormalized.

    Shape (2, 2) indexed [arm A/B, s up/down]. For a balanced merger both ports
    receive equal weight from a single arm, so every entry is 1/2 or undefined
    (reported as 1/2).
    """
    psi_a, psi_b = arm_states(propagate(params, cfg))
    out = np.full((2, 2), 0.5)
    for i, psi in enumerate((psi_a, psi_b)):
        sign = 1.0 if i == 0 else -1.0
        for j, s in enumerate(("up", "down")):
            amp = np.vdot(basis.vector(s), psi) / 2
            plus, minus = abs(amp) ** 2, abs(sign * amp) ** 2
            if plus + minus > 0:
                out[i, j] = plus / (plus + minus)
    return out


def _sample_observable(rng, n, cp):
    p_s, p_a, p_plus = _conditionals(cp)
    s = (rng.random(n) >= p_s[0]).astype(np.int8)  # 0 up, 1 down
    arm = (rng.random(n) >= p_a[s]).astype(np.int8)  # 0 A, 1 B
    port = (rng.random(n) >= p_plus[s]).astype(np.int8)  # 0 +, 1 -
    return arm, s, port


def _sample_arm(rng, n, cp, plus_given_arm):
    joint = _normalized(cp.joint())
    cell = rng.choice(4, size=n, p=joint)
    arm = (cell % 2).astype(np.int8)
    s = (cell // 2).astype(np.int8)
    port = (rng.random(n) >= plus_given_arm[arm, s]).astype(np.int8)
    return arm, s, port


def _worker(rng, n, cp, bookkeeping, plus_given_arm):
    counts = np.zeros((2, 2, 2), dtype=np.int64)  # [arm, s, port]
    done = 0
    while done < n:
        m = min(CHUNK, n - done)
        if bookkeeping == "arm":
            arm, s, port = _sample_arm(rng, m, cp, plus_given_arm)
        else:
            arm, s, port = _sample_observable(rng, m, cp)
        flat = np.bincount(arm * 4 + s * 2 + port, minlength=8)
        counts += flat.reshape(2, 2, 2)
        done += m
    return counts


def _split(n: int, workers: int) -> list[int]:
    base, extra = divmod(n, workers)
    return [base + (1 if w < extra else 0) for w in range(workers)]


def proportion_halfwidth(k: int, n: int, method: str = "normal") -> float:
    """95% half-width: normal approximation, or Clopper-Pearson half-range."""
    r = k / n
    if method == "normal":
        return Z95 * math.sqrt(r * (1 - r) / n)
    if method == "clopper-pearson":
        ci = stats.binomtest(k, n).proportion_ci(0.95, method="exact")
        return (ci.high - ci.low) / 2
    raise ParameterError(f"unknown interval method {method!r}")


def run_campaign(
    params: TieParams,
    cfg: InterferometerConfig,
    basis: InternalBasis = RAMSEY,
    n_trials: int = 100_000,
    seed: int = 0,
    workers: int = 1,
    bookkeeping: str = "auto",
    ci_method: str = "normal",
) -> CampaignStats:
    if n_trials < 1:
        raise ParameterError(f"n_trials must be >= 1, got {n_trials!r}")
    if workers < 1:
        raise ParameterError(f"workers must be >= 1, got {workers!r}")
    cp = channel_probabilities(params, cfg, basis)
    interfering = max(abs(cp.pab_up), abs(cp.pab_down)) > ARM_MODE_TOL
    if bookkeeping == "auto":
        bookkeeping = "observable" if interfering else "arm"
    elif bookkeeping == "arm" and interfering:
        raise ParameterError("arm-conditional detector sampling is undefined while the arms interfere")
    elif bookkeeping not in ("arm", "observable"):
        raise ParameterError(f"unknown bookkeeping {bookkeeping!r}")

    plus_given_arm = arm_restricted_plus(params, cfg, basis)
    wrong_port = 0 if cfg.delta_phi_a >= 0 else 1
    streams = make_streams(seed, workers)
    sizes = _split(n_trials, workers)
    jobs = [(rng, n, cp, bookkeeping, plus_given_arm) for rng, n in zip(streams, sizes)]
    if workers == 1:
        parts = [_worker(*jobs[0])]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda j: _worker(*j), jobs))
    counts = sum(parts)

    # path guess: up -> B, down -> A; wrong when (A, up) or (B, down)
    wrong_way = int(counts[0, 0].sum() + counts[1, 1].sum())
    wrong_phase = int(counts[:, :, wrong_port].sum())
    channel_counts = {
        (port, s): int(counts[:, 0 if s == "up" else 1, 0 if port == "+" else 1].sum())
        for port, s in CHANNELS
    }
    joint_counts = {
        cell: int(counts[0 if cell[0] == "A" else 1, 0 if cell[1] == "up" else 1].sum())
        for cell in JOINT_CELLS
    }
    return CampaignStats(
        n_trials=n_trials,
        wrong_way_rate=wrong_way / n_trials,
        wrong_phase_rate=wrong_phase / n_trials,
        ci_halfwidth_95=proportion_halfwidth(wrong_way, n_trials, ci_method),
        ci_phase_halfwidth_95=proportion_halfwidth(wrong_phase, n_trials, ci_method),
        seed=seed,
        workers=workers,
        bookkeeping=bookkeeping,
        channel_counts=channel_counts,
        joint_counts=joint_counts,
    )


def sample_trial(channel_probs: ChannelProbabilities, rng: np.random.Generator) -> TrialRecord:
    """One detection event via the observable bookkeeping, scored with ``tie_guess_rule``."""
    arm, s, port = (int(v[0]) for v in _sample_observable(rng, 1, channel_probs))
    path = "AB"[arm]
    outcome = ("up", "down")[s]
    detector = "+-"[port]
    guess = tie_guess_rule(detector, outcome)
    return TrialRecord(path, outcome, detector, guess.path, guess.phase_sign)
