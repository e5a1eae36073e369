"""Command-line entry point.

Configuration comes from a ``key = value`` file (``#`` starts a comment) and/or
``--key value`` flags; flags win. Keys use underscores in files and dashes on
the command line (``delta_phi_a`` / ``--delta-phi-a``).

Exit codes: 0 success, 1 usage or configuration error, 2 runtime error.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from dataclasses import dataclass, fields, replace
from pathlib import Path

import numpy as np

from . import complementarity as comp
from .core import TieParams
from .detection import ChannelProbabilities, blind_probabilities, channel_probabilities, count_sign_changes
from .errors import ConfigError, ParameterError, SingularConfigurationError
from .inference import (
    StandardDetectorModel,
    compare_strategies,
    expected_counts,
    tie_error_probabilities,
    wrong_way_distinguishability,
)
from .montecarlo import run_campaign
from .mzi import InterferometerConfig
from .wavepacket import DecayConfig, distinguishability_decay

MODES = ("probabilities", "sweep", "montecarlo", "complementarity", "figures", "compare")
FIGURES = ("fig1b", "fig1c", "fig2")
SWEEP_VARS = ("delta_phi_a", "delta_phi_b", "mean_phi_a", "mean_phi_b", "p", "phi")
FIG1B_POINTS = 1024
FIG2_POINTS = 256

# key -> (parser, default)
KEYS = {
    "mode": (str, None),
    "p": (float, 0.5),
    "ratio_n": (int, 3),
    "k1": (float, 1.0),
    "mean_phi_a": (float, math.pi / 2),
    "mean_phi_b": (float, math.pi),
    "delta_phi_a": (float, 0.0),
    "delta_phi_b": (float, 0.0),
    "d_s": (float, 0.95),
    "a_const": (float, 1.0),
    "mzi_length": (float, 0.0),
    "packet_length": (float, math.inf),
    "n_in": (float, 1e6),
    "n_trials": (int, 1_000_000),
    "seed": (int, 0),
    "workers": (int, 1),
    "bookkeeping": (str, "auto"),
    "output": (str, None),
    "sweep_var": (str, None),
    "grid_start": (float, None),
    "grid_stop": (float, None),
    "grid_points": (int, None),
    "which": (str, "all"),
}

GRID_DEFAULTS = {
    "delta_phi_a": (0.01, 0.5, 50),
    "delta_phi_b": (0.01, 0.5, 50),
    "mean_phi_a": (0.0, 2 * math.pi, 64),
    "mean_phi_b": (0.0, 2 * math.pi, 64),
    "p": (0.0, 1.0, 51),
    "phi": (0.05, math.pi - 0.05, 64),
}


@dataclass(frozen=True)
class Grid:
    start: float
    stop: float
    points: int

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.points)


@dataclass(frozen=True)
class RunConfig:
    mode: str
    params: TieParams
    interferometer: InterferometerConfig
    detector_model: StandardDetectorModel
    decay: DecayConfig
    packet_length: float
    n_trials: int
    seed: int
    workers: int
    bookkeeping: str
    n_in: float
    output_path: Path | None
    sweep_var: str
    grid: Grid
    which: tuple[str, ...]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(None, message)


def build_arg_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="tiemzi", description="TIE Mach-Zehnder simulator", allow_abbrev=False)
    ap.add_argument("--config", help="key = value configuration file")
    for key in KEYS:
        ap.add_argument("--" + key.replace("_", "-"), dest=key, default=None, metavar="VALUE")
    return ap


def read_config_file(path) -> dict[str, str]:
    raw = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError("config", f"cannot read {path}: {exc.strerror}") from exc
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(None, f"{path}:{lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in KEYS:
            raise ConfigError(key, f"unknown key ({path}:{lineno})")
        raw[key] = value
    return raw


def _convert(key: str, value: str):
    conv = KEYS[key][0]
    try:
        out = conv(value)
    except ValueError:
        raise ConfigError(key, f"malformed value {value!r} (expected {conv.__name__})") from None
    if isinstance(out, float) and not math.isfinite(out):
        raise ConfigError(key, f"value must be finite, got {value!r}")
    return out


def _require(cond: bool, key: str, message: str) -> None:
    if not cond:
        raise ConfigError(key, message)


def parse_config(argv=None, file_values: dict[str, str] | None = None) -> RunConfig:
    """Merge defaults, config file and flags into a validated ``RunConfig``."""
    ns = build_arg_parser().parse_args(argv)
    raw = dict(file_values or {})
    if ns.config:
        raw.update(read_config_file(ns.config))
    for key in KEYS:
        flag = getattr(ns, key)
        if flag is not None:
            raw[key] = flag
    v = {key: default for key, (_, default) in KEYS.items()}
    for key, value in raw.items():
        v[key] = _convert(key, value)

    _require(v["mode"] is not None, "mode", "mode missing")
    _require(v["mode"] in MODES, "mode", f"must be one of {', '.join(MODES)}")
    _require(0.0 <= v["p"] <= 1.0, "p", f"must lie in [0, 1], got {v['p']}")
    _require(v["ratio_n"] >= 1, "ratio_n", "must be a positive integer")
    _require(v["k1"] > 0, "k1", "must be positive")
    _require(0.0 <= v["d_s"] <= 1.0, "d_s", f"must lie in [0, 1], got {v['d_s']}")
    _require(v["a_const"] > 0, "a_const", "must be positive")
    _require(v["mzi_length"] >= 0, "mzi_length", "must be non-negative")
    _require(v["packet_length"] > 0, "packet_length", "must be positive")
    _require(v["n_in"] > 0, "n_in", "must be positive")
    _require(v["n_trials"] >= 1, "n_trials", "must be >= 1")
    _require(v["seed"] >= 0, "seed", "must be a non-negative integer")
    _require(v["workers"] >= 1, "workers", "must be >= 1")
    _require(v["bookkeeping"] in ("auto", "arm", "observable"), "bookkeeping",
             "must be one of auto, arm, observable")

    sweep_var = v["sweep_var"] or ("phi" if v["mode"] == "complementarity" else "delta_phi_a")
    _require(sweep_var in SWEEP_VARS, "sweep_var", f"must be one of {', '.join(SWEEP_VARS)}")
    g0 = GRID_DEFAULTS[sweep_var]
    grid = Grid(
        v["grid_start"] if v["grid_start"] is not None else g0[0],
        v["grid_stop"] if v["grid_stop"] is not None else g0[1],
        v["grid_points"] if v["grid_points"] is not None else g0[2],
    )
    _require(grid.points >= 2, "grid_points", "must be >= 2")
    _require(grid.start < grid.stop, "grid_start", "must be smaller than grid_stop")

    which = tuple(FIGURES) if v["which"] == "all" else tuple(w.strip() for w in v["which"].split(","))
    for w in which:
        _require(w in FIGURES, "which", f"unknown figure {w!r}; choose from {', '.join(FIGURES)} or all")

    n = v["ratio_n"]
    return RunConfig(
        mode=v["mode"],
        params=TieParams(p=v["p"], k1=v["k1"], ratio_n=n),
        interferometer=InterferometerConfig(v["mean_phi_a"], v["mean_phi_b"], v["delta_phi_a"], v["delta_phi_b"], n),
        detector_model=StandardDetectorModel(v["d_s"]),
        decay=DecayConfig(v["a_const"], v["mzi_length"]),
        packet_length=v["packet_length"],
        n_trials=v["n_trials"],
        seed=v["seed"],
        workers=v["workers"],
        bookkeeping=v["bookkeeping"],
        n_in=v["n_in"],
        output_path=Path(v["output"]) if v["output"] else None,
        sweep_var=sweep_var,
        grid=grid,
        which=which,
    )


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "1" if x else "0"
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    return str(x)


def write_csv(path: Path, header, rows) -> Path:
    path = Path(path)
    try:
        if path.parent and not path.parent.exists():
            path.parent.mkdir(parents=True)
        with path.open("w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            for row in rows:
                w.writerow([_fmt(x) for x in row])
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror}") from exc
    return path


CHANNEL_COLUMNS = [f.name for f in fields(ChannelProbabilities)]


def _channel_row(cp) -> list[float]:
    return [getattr(cp, c) for c in CHANNEL_COLUMNS]


def fig1b_rows(points: int = FIG1B_POINTS):
    """phi_A1 scan at phi_B1 = pi, p = 1/2, N = 3, plus the N = 1, V = 1 fringe."""
    params = TieParams(p=0.5, ratio_n=3)
    rows = []
    for phi_a in np.linspace(0.0, 2 * math.pi, points, endpoint=False):
        cfg = InterferometerConfig(float(phi_a), math.pi, 0.0, 0.0, 3)
        cp = channel_probabilities(params, cfg)
        rows.append((float(phi_a), cp.pab_up, wrong_way_distinguishability(cfg, params), math.cos(phi_a - math.pi)))
    return rows


def fig1c_rows(model: StandardDetectorModel, grid_values):
    rows = compare_strategies(InterferometerConfig(), model, grid_values)
    return [(r.abs_delta_phi_a, r.tie_wrong_way, r.tie_wrong_phase, r.std_wrong_way, r.std_wrong_phase) for r in rows]


FIG2_FILES = {1: "fig2_n1.csv", 3: "fig2_n3.csv", math.inf: "fig2_ninf.csv"}


def emit_figure_data(which, out_dir, model: StandardDetectorModel | None = None, fig1c_grid=None) -> list[Path]:
    """Write figure data CSVs into ``out_dir`` and return the written paths."""
    model = model or StandardDetectorModel(0.95)
    out_dir = Path(out_dir)
    which = (which,) if isinstance(which, str) else tuple(which)
    written = []
    if "fig1b" in which:
        written.append(write_csv(out_dir / "fig1b.csv", ["phi_a1", "p_ab_up", "d_tie", "p_ab_standard"], fig1b_rows()))
    if "fig1c" in which:
        grid = GRID_DEFAULTS["delta_phi_a"] if fig1c_grid is None else fig1c_grid
        values = np.linspace(*grid) if isinstance(grid, tuple) else np.asarray(grid)
        written.append(write_csv(
            out_dir / "fig1c.csv",
            ["abs_delta_phi_a", "tie_wrong_way", "tie_wrong_phase", "std_wrong_way", "std_wrong_phase"],
            fig1c_rows(model, values),
        ))
    if "fig2" in which:
        curves = comp.figure2_curves(tuple(FIG2_FILES), FIG2_POINTS)
        for n, name in FIG2_FILES.items():
            c = curves[n]
            written.append(write_csv(out_dir / name, ["s", "d"], zip(c.s, c.d)))
        written.append(write_csv(
            out_dir / "fig2_areas.csv",
            ["ratio_n", "area", "area_closed_form"],
            [(_n_label(n), curves[n].area, comp.first_quadrant_area_exact(n)) for n in FIG2_FILES],
        ))
    return written


def _n_label(n) -> str:
    return "inf" if math.isinf(n) else str(int(n))


def _print_table(header, rows, out) -> None:
    print("  ".join(f"{h:>14s}" for h in header), file=out)
    for row in rows:
        print("  ".join(_cell(x) for x in row), file=out)


def _cell(x) -> str:
    if isinstance(x, (bool, str, int)):
        return f"{_fmt(x):>14s}"
    return f"{float(x):>14.8g}"


def _sweep_cfg(cfg: RunConfig, var: str, x: float) -> tuple[TieParams, InterferometerConfig]:
    if var == "p":
        return replace(cfg.params, p=x), cfg.interferometer
    if var == "phi":
        return cfg.params, replace(cfg.interferometer, mean_phi_a=cfg.interferometer.mean_phi_b + x,
                                   delta_phi_a=0.0, delta_phi_b=0.0)
    return cfg.params, replace(cfg.interferometer, **{var: x})


def _mode_probabilities(cfg: RunConfig, out):
    cp = channel_probabilities(cfg.params, cfg.interferometer)
    plus, minus = blind_probabilities(cfg.params, cfg.interferometer)
    counts = expected_counts(cfg.params, cfg.interferometer, n_in=cfg.n_in)
    print(f"phi = phi_A1 - phi_B1 = {_fmt(cfg.interferometer.phi)}", file=out)
    for name in CHANNEL_COLUMNS:
        print(f"{name:>14s} = {_fmt(getattr(cp, name))}", file=out)
    print(f"{'sum(channels)':>14s} = {_fmt(sum(cp.channels()))}", file=out)
    print(f"{'P+ / P-':>14s} = {_fmt(plus)} / {_fmt(minus)}", file=out)
    print(f"{'dN_up':>14s} = {_fmt(counts.delta_n_up)}  (n_in = {_fmt(cfg.n_in)})", file=out)
    print(f"{'Ntot_up':>14s} = {_fmt(counts.n_tot_up)}", file=out)
    if cfg.output_path:
        write_csv(cfg.output_path, CHANNEL_COLUMNS + ["p_plus", "p_minus"], [_channel_row(cp) + [plus, minus]])


def _mode_sweep(cfg: RunConfig, out):
    header = [cfg.sweep_var] + CHANNEL_COLUMNS + ["p_plus", "p_minus"]
    rows = []
    for x in cfg.grid.values():
        params, icfg = _sweep_cfg(cfg, cfg.sweep_var, float(x))
        cp = channel_probabilities(params, icfg)
        rows.append([float(x)] + _channel_row(cp) + [cp.p_plus, cp.p_minus])
    _print_table(header[:5], [r[:5] for r in rows], out)
    if cfg.output_path:
        write_csv(cfg.output_path, header, rows)


def _mode_compare(cfg: RunConfig, out):
    rows = compare_strategies(cfg.interferometer, cfg.detector_model, cfg.grid.values(), cfg.params)
    header = ["abs_delta_phi_a", "tie_wrong_way", "tie_wrong_phase", "std_wrong_way", "std_wrong_phase",
              "tie_better_way", "tie_better_phase", "tie_dominates"]
    table = [(r.abs_delta_phi_a, r.tie_wrong_way, r.tie_wrong_phase, r.std_wrong_way, r.std_wrong_phase,
              r.tie_better_way, r.tie_better_phase, r.tie_dominates) for r in rows]
    _print_table(header[:5] + ["tie_dominates"], [t[:5] + (t[7],) for t in table], out)
    crossings = [r.abs_delta_phi_a for r in rows if not r.tie_better_way]
    if crossings:
        print(f"standard detector has lower wrong-way error from |dphi_A| = {_fmt(min(crossings))}", file=out)
    if cfg.output_path:
        write_csv(cfg.output_path, header, table)


def _mode_complementarity(cfg: RunConfig, out):
    n = cfg.params.ratio_n
    header = ["p", "phi", "distinguishability", "gen_visibility", "concurrence", "sensitivity",
              "d2_plus_v2", "general_ellipse_lhs", "distinguishability_decayed"]
    decay = distinguishability_decay(cfg.decay, cfg.packet_length)
    rows = []
    for x in cfg.grid.values():
        params, icfg = _sweep_cfg(cfg, cfg.sweep_var, float(x))
        pt = comp.complementarity_point(params.p, icfg.phi, n)
        rows.append([pt.at_p, pt.at_phi, pt.distinguishability, pt.gen_visibility, pt.concurrence,
                     pt.sensitivity, pt.distinguishability**2 + pt.gen_visibility**2,
                     comp.general_ellipse_lhs(pt.sensitivity, pt.distinguishability, n),
                     pt.distinguishability * decay])
    _print_table(header[:6], [r[:6] for r in rows], out)
    if cfg.output_path:
        write_csv(cfg.output_path, header, rows)


def _mode_montecarlo(cfg: RunConfig, out):
    st = run_campaign(cfg.params, cfg.interferometer, n_trials=cfg.n_trials, seed=cfg.seed,
                      workers=cfg.workers, bookkeeping=cfg.bookkeeping)
    exact = tie_error_probabilities(cfg.interferometer, cfg.params)
    cp = channel_probabilities(cfg.params, cfg.interferometer)
    print(f"seed={st.seed} workers={st.workers} n_trials={st.n_trials} bookkeeping={st.bookkeeping}", file=out)
    print(f"wrong-way   {_fmt(st.wrong_way_rate)} +- {_fmt(st.ci_halfwidth_95)}  (exact {_fmt(exact.wrong_way)})", file=out)
    print(f"wrong-phase {_fmt(st.wrong_phase_rate)} +- {_fmt(st.ci_phase_halfwidth_95)}  (exact {_fmt(exact.wrong_phase)})", file=out)
    header = ["seed", "workers", "n_trials", "bookkeeping", "delta_phi_a", "delta_phi_b",
              "wrong_way_rate", "wrong_way_exact", "wrong_way_ci95",
              "wrong_phase_rate", "wrong_phase_exact", "wrong_phase_ci95"]
    row = [st.seed, st.workers, st.n_trials, st.bookkeeping, cfg.interferometer.delta_phi_a,
           cfg.interferometer.delta_phi_b, st.wrong_way_rate, exact.wrong_way, st.ci_halfwidth_95,
           st.wrong_phase_rate, exact.wrong_phase, st.ci_phase_halfwidth_95]
    for (port, s), count in st.channel_counts.items():
        tag = f"{'plus' if port == '+' else 'minus'}_{s}"
        header += [f"count_{tag}", f"p_{tag}"]
        row += [count, cp.channel(port, s)]
        print(f"  channel {port}{s:<4s} {count / st.n_trials:.6f}  (exact {cp.channel(port, s):.6f})", file=out)
    if cfg.output_path:
        write_csv(cfg.output_path, header, [row])


def _mode_figures(cfg: RunConfig, out):
    out_dir = cfg.output_path or Path("figures")
    grid = (cfg.grid.start, cfg.grid.stop, cfg.grid.points) if cfg.sweep_var == "delta_phi_a" else None
    for path in emit_figure_data(cfg.which, out_dir, cfg.detector_model, grid):
        print(f"wrote {path}", file=out)
    if "fig1b" in cfg.which:
        rows = fig1b_rows()
        print(f"fig1b: P_AB_up sign changes {count_sign_changes([r[1] for r in rows])}, "
              f"standard fringe sign changes {count_sign_changes([r[3] for r in rows])}", file=out)


DISPATCH = {
    "probabilities": _mode_probabilities,
    "sweep": _mode_sweep,
    "montecarlo": _mode_montecarlo,
    "complementarity": _mode_complementarity,
    "figures": _mode_figures,
    "compare": _mode_compare,
}


def run(config: RunConfig, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        DISPATCH[config.mode](config, out)
    except (ParameterError, SingularConfigurationError, OSError, ArithmeticError) as exc:
        print(f"tiemzi: error: {exc}", file=sys.stderr)
        return 2
    return 0


def main(argv=None) -> int:
    try:
        config = parse_config(argv)
    except (ConfigError, ParameterError) as exc:
        print(f"tiemzi: config error: {exc}", file=sys.stderr)
        return 1
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
