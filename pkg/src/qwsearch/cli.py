"""Experiment runner: spectra, critical-coupling tables and figure data as flat files.

Configs are flat JSON objects with dotted keys (graph.family, graph.p,
sweep.gamma_points, ...).  All numeric fields are validated before any
computation starts, outputs are deterministic, and CSV floats carry 17
significant digits so they round-trip exactly.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ConfigError, NumericalFailure
from .graphs import (
    PRODUCT_SIZE_CAP,
    Laplacian,
    TransitionGraph,
    cartesian_power,
    complete_graph,
    interior_measure_profile,
    path_graph,
    probabilistic_laplacian,
)
from .search import (
    _LowLevelSolver,
    gamma_critical_points,
    optimize_search,
    success_curve,
)
from .spectral import SearchHamiltonian, decompose

GAMMA_SCAN_DEFAULT = (0.05, 3.0, 600)
T_POINTS_DEFAULT = 4000
OPT_GAMMA_POINTS_DEFAULT = 200

TABLE_COLUMNS = [
    "p",
    "gamma_s",
    "gamma_w",
    "gamma_E",
    "gamma_opt",
    "E0",
    "E1",
    "sqrt_mu_over_vol",
    "t_opt",
    "half_pi_sqrt_vol",
]

FIGURE_KINDS = ("overlaps", "contour", "timeseries", "volume")

_KNOWN_KEYS = {
    "graph.family",
    "graph.p",
    "graph.d",
    "graph.N",
    "target.vertex",
    "sweep.gamma_min",
    "sweep.gamma_max",
    "sweep.gamma_points",
    "sweep.t_points",
    "output.format",
    "output.path",
    "figure.kind",
    "spectrum.gamma_values",
    "volume.p_min",
    "volume.p_max",
    "volume.p_points",
}


@dataclass
class ExperimentConfig:
    family: str
    p_values: list[float] = field(default_factory=list)
    d: int = 1
    n_complete: int = 0
    target: int | str = "corner"
    gamma_min: float | None = None
    gamma_max: float | None = None
    gamma_points: int | None = None
    t_points: int | None = None
    out_format: str = "csv"
    out_path: str = "out"
    figure: str | None = None
    spectrum_gammas: list[float] = field(default_factory=lambda: [1.0])
    volume_p_min: float = 0.05
    volume_p_max: float = 0.95
    volume_p_points: int = 19
    threads: int = 1


def _want(raw: dict, key: str, kind, default, check, describe: str):
    if key not in raw:
        return default
    value = raw[key]
    if kind is float and isinstance(value, int) and not isinstance(value, bool):
        value = float(value)
    if not isinstance(value, kind) or isinstance(value, bool):
        raise ConfigError(f"{key}: expected {describe}, got {value!r}")
    if not check(value):
        raise ConfigError(f"{key}: expected {describe}, got {value!r}")
    return value


def parse_config(raw: dict) -> ExperimentConfig:
    """Validate a flat dotted-key mapping and build the experiment config."""
    if not isinstance(raw, dict):
        raise ConfigError("config: top level must be a JSON object")
    unknown = set(raw) - _KNOWN_KEYS
    if unknown:
        raise ConfigError(f"{sorted(unknown)[0]}: unknown configuration key")

    family = _want(
        raw, "graph.family", str, None,
        lambda v: v in ("path-power", "complete"),
        "one of 'path-power', 'complete'",
    )
    if family is None:
        raise ConfigError("graph.family: required key is missing")

    cfg = ExperimentConfig(family=family)

    if family == "path-power":
        p_raw = raw.get("graph.p")
        if p_raw is None:
            raise ConfigError("graph.p: required for family 'path-power'")
        values = p_raw if isinstance(p_raw, list) else [p_raw]
        if not values:
            raise ConfigError("graph.p: list must not be empty")
        for v in values:
            if isinstance(v, bool) or not isinstance(v, (int, float)) or not (0.0 < v < 1.0):
                raise ConfigError(f"graph.p: must be a real number in (0, 1), got {v!r}")
        cfg.p_values = [float(v) for v in values]
        cfg.d = _want(raw, "graph.d", int, None, lambda v: v >= 1, "an integer >= 1")
        if cfg.d is None:
            raise ConfigError("graph.d: required for family 'path-power'")
        if 4**cfg.d > PRODUCT_SIZE_CAP:
            raise ConfigError(f"graph.d: 4^{cfg.d} vertices exceeds the cap {PRODUCT_SIZE_CAP}")
    else:
        cfg.n_complete = _want(raw, "graph.N", int, None, lambda v: v >= 2, "an integer >= 2")
        if cfg.n_complete is None:
            raise ConfigError("graph.N: required for family 'complete'")

    target = raw.get("target.vertex", "corner")
    if target != "corner" and (isinstance(target, bool) or not isinstance(target, int)):
        raise ConfigError(f"target.vertex: expected 'corner' or a vertex index, got {target!r}")
    cfg.target = target

    cfg.gamma_min = _want(raw, "sweep.gamma_min", float, None, lambda v: v > 0, "a positive real")
    cfg.gamma_max = _want(raw, "sweep.gamma_max", float, None, lambda v: v > 0, "a positive real")
    if cfg.gamma_min is not None and cfg.gamma_max is not None and cfg.gamma_min >= cfg.gamma_max:
        raise ConfigError("sweep.gamma_min: must be below sweep.gamma_max")
    cfg.gamma_points = _want(raw, "sweep.gamma_points", int, None, lambda v: v >= 2, "an integer >= 2")
    cfg.t_points = _want(raw, "sweep.t_points", int, None, lambda v: v >= 2, "an integer >= 2")

    cfg.out_format = _want(raw, "output.format", str, "csv", lambda v: v in ("csv", "json"), "'csv' or 'json'")
    cfg.out_path = _want(raw, "output.path", str, "out", lambda v: len(v) > 0, "a path")
    cfg.figure = _want(raw, "figure.kind", str, None, lambda v: v in FIGURE_KINDS, f"one of {FIGURE_KINDS}")

    gv = raw.get("spectrum.gamma_values", [1.0])
    if not isinstance(gv, list) or not gv:
        raise ConfigError(f"spectrum.gamma_values: expected a non-empty list, got {gv!r}")
    for v in gv:
        if isinstance(v, bool) or not isinstance(v, (int, float)) or v <= 0:
            raise ConfigError(f"spectrum.gamma_values: entries must be positive reals, got {v!r}")
    cfg.spectrum_gammas = [float(v) for v in gv]

    cfg.volume_p_min = _want(raw, "volume.p_min", float, 0.05, lambda v: 0 < v < 1, "a real in (0, 1)")
    cfg.volume_p_max = _want(raw, "volume.p_max", float, 0.95, lambda v: 0 < v < 1, "a real in (0, 1)")
    if cfg.volume_p_min > cfg.volume_p_max:
        raise ConfigError("volume.p_min: must not exceed volume.p_max")
    cfg.volume_p_points = _want(raw, "volume.p_points", int, 19, lambda v: v >= 1, "an integer >= 1")
    return cfg


def _build_graph(cfg: ExperimentConfig, p: float | None = None):
    if cfg.family == "complete":
        g = complete_graph(cfg.n_complete)
        lap = probabilistic_laplacian(g)
        return g, lap, lap.measure
    return cartesian_power(path_graph(p), cfg.d)


def _resolve_target(cfg: ExperimentConfig, g: TransitionGraph) -> int:
    if cfg.target == "corner":
        return 0
    if not (0 <= cfg.target < g.n):
        raise ConfigError(f"target.vertex: index {cfg.target} out of range for {g.n} vertices")
    return int(cfg.target)


def _scan_range(cfg: ExperimentConfig) -> tuple[float, float]:
    lo = cfg.gamma_min if cfg.gamma_min is not None else GAMMA_SCAN_DEFAULT[0]
    hi = cfg.gamma_max if cfg.gamma_max is not None else GAMMA_SCAN_DEFAULT[1]
    return lo, hi


def _fmt(value) -> str:
    if value is None:
        return ""
    return format(float(value), ".17g")


def _write_csv(path: Path, header: list[str] | None, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        if header is not None:
            fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(v if isinstance(v, str) else _fmt(v) for v in row) + "\n")


def _write_json(path: Path, payload) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _write_schema(out: Path, kind: str, columns: list[tuple[str, str]]) -> None:
    _write_json(
        out / f"{kind}.schema.json",
        {"figure": kind, "columns": [{"name": n, "description": d} for n, d in columns]},
    )


def export_matrix_csv(path: Path, matrix: np.ndarray) -> None:
    """Row-major headerless CSV dump with 17 significant digits."""
    _write_csv(path, None, ([_fmt(v) for v in row] for row in matrix))


# ---------------------------------------------------------------------------
# subcommands


def run_spectrum(cfg: ExperimentConfig, out: Path) -> None:
    p = cfg.p_values[0] if cfg.family == "path-power" else None
    if cfg.family == "path-power" and len(cfg.p_values) != 1:
        raise ConfigError("graph.p: spectrum expects a single value, got a list")
    g, lap, measure = _build_graph(cfg, p)
    w = _resolve_target(cfg, g)

    sd = decompose(lap)
    _write_csv(
        out / "laplacian_spectrum.csv",
        ["index", "eigenvalue"],
        ([i, sd.eigenvalues[i]] for i in range(g.n)),
    )
    rows = []
    for gamma in cfg.spectrum_gammas:
        hsd = decompose(SearchHamiltonian(gamma, w, lap))
        rows.extend([gamma, i, hsd.eigenvalues[i]] for i in range(g.n))
    _write_csv(out / "hamiltonian_spectrum.csv", ["gamma", "index", "eigenvalue"], rows)
    export_matrix_csv(out / "laplacian.csv", lap.matrix)

    profile = interior_measure_profile(g)
    _write_json(
        out / "summary.json",
        {
            "family": cfg.family,
            "vertices": g.n,
            "volume": measure.volume,
            "measure_min": float(measure.mu.min()),
            "measure_max": float(measure.mu.max()),
            "interior_min": profile.interior_min,
            "interior_max": profile.interior_max,
            "interior_constant": profile.interior_constant,
            "homogeneous": profile.homogeneous,
        },
    )


@dataclass(frozen=True)
class TableRow:
    """One summary line per parameter value: critical couplings and the optimum."""

    p: float
    gamma_s: float | None
    gamma_w: float | None
    gamma_E: float | None
    gamma_opt: float
    e0: float
    e1: float
    sqrt_mu_over_vol: float
    t_opt: float
    half_pi_sqrt_vol: float

    def cells(self) -> list:
        return [
            self.p, self.gamma_s, self.gamma_w, self.gamma_E, self.gamma_opt,
            self.e0, self.e1, self.sqrt_mu_over_vol, self.t_opt, self.half_pi_sqrt_vol,
        ]


def compute_table_row(cfg: ExperimentConfig, p: float) -> TableRow:
    g, lap, measure = _build_graph(cfg, p)
    w = _resolve_target(cfg, g)
    scan = _scan_range(cfg)
    crit = gamma_critical_points(
        g, w, scan,
        grid_points=cfg.gamma_points or GAMMA_SCAN_DEFAULT[2],
        lap=lap, threads=cfg.threads,
    )
    for name, value in (("gamma_s", crit.gamma_s), ("gamma_w", crit.gamma_w), ("gamma_E", crit.gamma_E)):
        if value is None:
            print(f"note: p={p}: no {name} root in [{scan[0]}, {scan[1]}]", file=sys.stderr)
    opt_range = (0.8 * crit.gamma_E, 1.2 * crit.gamma_E) if crit.gamma_E is not None else scan
    opt = optimize_search(
        g, w, opt_range,
        gamma_points=OPT_GAMMA_POINTS_DEFAULT,
        t_points=cfg.t_points or T_POINTS_DEFAULT,
        lap=lap, threads=cfg.threads,
    )
    row = TableRow(
        p=p,
        gamma_s=crit.gamma_s,
        gamma_w=crit.gamma_w,
        gamma_E=crit.gamma_E,
        gamma_opt=opt.gamma_opt,
        e0=opt.e0,
        e1=opt.e1,
        sqrt_mu_over_vol=float(np.sqrt(measure.mu[w] / measure.volume)),
        t_opt=opt.t_opt,
        half_pi_sqrt_vol=float(np.pi / 2.0 * np.sqrt(measure.volume / measure.mu[w])),
    )
    _revalidate_row(row, g, lap, w)
    return row


def _revalidate_row(row: TableRow, g: TransitionGraph, lap: Laplacian, w: int) -> None:
    """Re-derive every derived cell from scratch; reject on any mismatch."""
    solver = _LowLevelSolver(lap, w)
    for which, root in (("s", row.gamma_s), ("w", row.gamma_w), ("E", row.gamma_E)):
        if root is None:
            continue
        if abs(solver.crossing_function(which)(root)) > 1e-9:
            raise NumericalFailure(f"gamma_{which}={root} fails its defining equation")
    sd = decompose(SearchHamiltonian(row.gamma_opt, w, lap))
    if abs(sd.eigenvalues[0] - row.e0) > 1e-12 or abs(sd.eigenvalues[1] - row.e1) > 1e-12:
        raise NumericalFailure("E0/E1 at gamma_opt do not reproduce under recomputation")
    mu_w, vol = lap.measure.mu[w], lap.measure.volume
    if abs(row.sqrt_mu_over_vol - np.sqrt(mu_w / vol)) > 1e-15:
        raise NumericalFailure("sqrt(mu/vol) cell does not reproduce")
    present = [v for v in (row.gamma_s, row.gamma_E, row.gamma_w) if v is not None]
    if len(present) == 3 and not (
        row.gamma_s <= row.gamma_E + 1e-6 and row.gamma_E <= row.gamma_w + 1e-6
    ):
        raise NumericalFailure(
            f"critical couplings out of order at p={row.p}: "
            f"{row.gamma_s}, {row.gamma_E}, {row.gamma_w}"
        )


def run_tables(cfg: ExperimentConfig, out: Path) -> None:
    if cfg.family != "path-power":
        raise ConfigError("graph.family: tables require the 'path-power' family")
    rows = [compute_table_row(cfg, p) for p in cfg.p_values]
    if cfg.out_format == "json":
        _write_json(
            out / "tables.json",
            [dict(zip(TABLE_COLUMNS, r.cells())) for r in rows],
        )
    else:
        _write_csv(out / "tables.csv", TABLE_COLUMNS, (r.cells() for r in rows))


def run_figure_data(cfg: ExperimentConfig, figure: str, out: Path) -> None:
    if figure not in FIGURE_KINDS:
        raise ConfigError(f"figure.kind: expected one of {FIGURE_KINDS}, got {figure!r}")
    if figure == "volume":
        _figure_volume(cfg, out)
        return
    if cfg.family != "path-power":
        raise ConfigError(f"graph.family: figure '{figure}' requires the 'path-power' family")
    for p in cfg.p_values:
        if figure == "overlaps":
            _figure_overlaps(cfg, p, out)
        elif figure == "contour":
            _figure_contour(cfg, p, out)
        else:
            _figure_timeseries(cfg, p, out)


def _figure_overlaps(cfg: ExperimentConfig, p: float, out: Path) -> None:
    g, lap, _ = _build_graph(cfg, p)
    w = _resolve_target(cfg, g)
    lo, hi = _scan_range(cfg)
    grid = np.linspace(lo, hi, cfg.gamma_points or GAMMA_SCAN_DEFAULT[2])
    solver = _LowLevelSolver(lap, w)
    rows = []
    for gamma in grid:
        _, _, s0, s1, w0, w1 = solver.low_pair(gamma)
        rows.append([gamma, s0, w0, s1, w1])
    _write_csv(
        out / f"overlaps_p{p:g}.csv",
        ["gamma", "s_psi0", "w_psi0", "s_psi1", "w_psi1"],
        rows,
    )
    _write_schema(out, "overlaps", [
        ("gamma", "Laplacian coupling"),
        ("s_psi0", "squared overlap of the initial state with the ground state"),
        ("w_psi0", "squared overlap of the target state with the ground state"),
        ("s_psi1", "squared overlap of the initial state with the first excited state"),
        ("w_psi1", "squared overlap of the target state with the first excited state"),
    ])


def _figure_contour(cfg: ExperimentConfig, p: float, out: Path) -> None:
    g, lap, measure = _build_graph(cfg, p)
    w = _resolve_target(cfg, g)
    lo, hi = _scan_range(cfg)
    grid = np.linspace(lo, hi, cfg.gamma_points or GAMMA_SCAN_DEFAULT[2])
    solver = _LowLevelSolver(lap, w)
    gaps = [abs(r[1] - r[0]) for r in map(solver.low_pair, grid)]
    t_max = min(measure.volume, 3.0 * np.pi / max(min(gaps), 1e-300))
    times = np.linspace(0.0, t_max, cfg.t_points or T_POINTS_DEFAULT)
    rows = []
    for gamma in grid:
        h = SearchHamiltonian(gamma, w, lap)
        curve = success_curve(h, times, spectral=decompose(h, check=False))
        rows.extend([t, gamma, pi] for t, pi in zip(times, curve))
    _write_csv(out / f"contour_p{p:g}.csv", ["t", "gamma", "pi"], rows)
    _write_schema(out, "contour", [
        ("t", "evolution time"),
        ("gamma", "Laplacian coupling"),
        ("pi", "success probability at (t, gamma)"),
    ])


def _figure_timeseries(cfg: ExperimentConfig, p: float, out: Path) -> None:
    g, lap, _ = _build_graph(cfg, p)
    w = _resolve_target(cfg, g)
    crit = gamma_critical_points(
        g, w, _scan_range(cfg),
        grid_points=cfg.gamma_points or GAMMA_SCAN_DEFAULT[2],
        lap=lap, threads=cfg.threads,
    )
    opt_range = (0.8 * crit.gamma_E, 1.2 * crit.gamma_E) if crit.gamma_E is not None else _scan_range(cfg)
    opt = optimize_search(
        g, w, opt_range,
        gamma_points=OPT_GAMMA_POINTS_DEFAULT,
        t_points=cfg.t_points or T_POINTS_DEFAULT,
        lap=lap, threads=cfg.threads,
    )
    times = np.linspace(0.0, 1.25 * opt.t_opt, cfg.t_points or T_POINTS_DEFAULT)
    h = SearchHamiltonian(opt.gamma_opt, w, lap)
    curve = success_curve(h, times, spectral=decompose(h, check=False))
    _write_csv(out / f"timeseries_p{p:g}.csv", ["t", "pi"], zip(times, curve))
    _write_json(
        out / f"timeseries_p{p:g}.meta.json",
        {
            "p": p,
            "gamma_opt": opt.gamma_opt,
            "t_opt": opt.t_opt,
            "pi_max": opt.pi_max,
            "E0": opt.e0,
            "E1": opt.e1,
            "truncated": opt.truncated,
        },
    )
    _write_schema(out, "timeseries", [
        ("t", "evolution time"),
        ("pi", "success probability at the optimal coupling"),
    ])


def _figure_volume(cfg: ExperimentConfig, out: Path) -> None:
    if cfg.family != "path-power":
        raise ConfigError("graph.family: figure 'volume' requires the 'path-power' family")
    ps = np.linspace(cfg.volume_p_min, cfg.volume_p_max, cfg.volume_p_points)
    rows = []
    for p in ps:
        _, _, measure = cartesian_power(path_graph(float(p)), cfg.d)
        rows.append([p, np.sqrt(measure.volume)])
    _write_csv(out / "volume.csv", ["p", "sqrt_volume"], rows)
    _write_schema(out, "volume", [
        ("p", "path bias parameter"),
        ("sqrt_volume", "square root of the lattice volume"),
    ])


def run_optimize(cfg: ExperimentConfig, out: Path) -> None:
    p = cfg.p_values[0] if cfg.family == "path-power" else None
    if cfg.family == "path-power" and len(cfg.p_values) != 1:
        raise ConfigError("graph.p: optimize expects a single value, got a list")
    g, lap, _ = _build_graph(cfg, p)
    w = _resolve_target(cfg, g)
    gamma_range = None
    if cfg.gamma_min is not None and cfg.gamma_max is not None:
        gamma_range = (cfg.gamma_min, cfg.gamma_max)
    opt = optimize_search(
        g, w, gamma_range,
        gamma_points=cfg.gamma_points or OPT_GAMMA_POINTS_DEFAULT,
        t_points=cfg.t_points or T_POINTS_DEFAULT,
        lap=lap, threads=cfg.threads,
    )
    payload = {
        "t_opt": opt.t_opt,
        "gamma_opt": opt.gamma_opt,
        "pi_max": opt.pi_max,
        "E0": opt.e0,
        "E1": opt.e1,
        "gamma_range": list(opt.gamma_range),
        "gamma_points": opt.gamma_points,
        "t_points": opt.t_points,
        "truncated": opt.truncated,
        "refined_gamma_step": opt.refined_gamma_step,
    }
    if cfg.out_format == "json":
        _write_json(out / "optimum.json", payload)
    else:
        _write_csv(
            out / "optimum.csv",
            ["t_opt", "gamma_opt", "pi_max", "E0", "E1", "truncated"],
            [[opt.t_opt, opt.gamma_opt, opt.pi_max, opt.e0, opt.e1, str(opt.truncated).lower()]],
        )


# ---------------------------------------------------------------------------
# entry point


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qwsearch",
        description="Quantum-walk search experiments on weighted graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("spectrum", "export Laplacian and Hamiltonian spectra plus a summary"),
        ("tables", "critical couplings and search optima per parameter value"),
        ("figures", "grid data behind the overlap/contour/timeseries/volume plots"),
        ("optimize", "locate the optimal coupling and time"),
    ):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--config", required=True, help="path to a flat JSON config")
        cmd.add_argument("--out", help="output directory (overrides output.path)")
        cmd.add_argument("--threads", type=int, help="worker threads for sweeps")
        cmd.add_argument("--gamma-min", type=float, dest="gamma_min")
        cmd.add_argument("--gamma-max", type=float, dest="gamma_max")
        cmd.add_argument("--gamma-points", type=int, dest="gamma_points")
        cmd.add_argument("--t-points", type=int, dest="t_points")
        if name == "figures":
            cmd.add_argument("--figure", choices=FIGURE_KINDS, help="which figure data to emit")
    return parser


def _apply_overrides(cfg: ExperimentConfig, args: argparse.Namespace) -> None:
    if args.out is not None:
        cfg.out_path = args.out
    if args.threads is not None:
        if args.threads < 1:
            raise ConfigError(f"--threads: must be >= 1, got {args.threads}")
        cfg.threads = args.threads
    for key in ("gamma_min", "gamma_max", "gamma_points", "t_points"):
        value = getattr(args, key)
        if value is not None:
            setattr(cfg, key, value)
    if cfg.gamma_min is not None and cfg.gamma_max is not None and cfg.gamma_min >= cfg.gamma_max:
        raise ConfigError("sweep.gamma_min: must be below sweep.gamma_max")
    if cfg.gamma_points is not None and cfg.gamma_points < 2:
        raise ConfigError(f"sweep.gamma_points: must be >= 2, got {cfg.gamma_points}")
    if cfg.t_points is not None and cfg.t_points < 2:
        raise ConfigError(f"sweep.t_points: must be >= 2, got {cfg.t_points}")


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return 4
    except json.JSONDecodeError as exc:
        print(f"error: config is not valid JSON: {exc}", file=sys.stderr)
        return 2

    try:
        cfg = parse_config(raw)
        _apply_overrides(cfg, args)
        out = Path(cfg.out_path)
        out.mkdir(parents=True, exist_ok=True)
        if args.command == "spectrum":
            run_spectrum(cfg, out)
        elif args.command == "tables":
            run_tables(cfg, out)
        elif args.command == "figures":
            figure = getattr(args, "figure", None) or cfg.figure
            if figure is None:
                raise ConfigError("figure.kind: required (or pass --figure)")
            run_figure_data(cfg, figure, out)
        else:
            run_optimize(cfg, out)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalFailure as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"io failure: {exc}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
