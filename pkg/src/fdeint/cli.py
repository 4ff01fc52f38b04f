"""Command-line front end.

Three subcommands:

* ``solve``        -- integrate a built-in problem and emit one row per grid
                      point (CSV or JSON), with residuals when an exact
                      solution exists.
* ``figure``       -- write the CSV data behind the two standard comparison
                      figures and render them to PNG alongside.
* ``convergence``  -- tabulate error versus step size for a scheme.

Numeric fields are rendered with 17 significant digits so every value
round-trips exactly through the text output; with fixed seeds the emitted
files are byte-identical across runs.

Exit codes: 0 success, 1 configuration/validation error, 2 solver failure
(non-finite blow-up), 3 I/O error.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .analysis import ConvergenceTable, convergence_study, residuals
from .core import FdeProblem, SchemeKind, TimeGrid, ramp_grid, random_grid, uniform_grid
from .errors import FdeintError, SchemeFailureError
from .problems import linear_problem, riccati_problem
from .reference import ReferenceSolution, exact_linear, fine_grid_reference
from .schemes import SOLVERS, solve_el_sayed, solve_gl, solve_pwc

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_SOLVER = 2
EXIT_IO = 3

#: Seed behind the random-step series of figure 2, fixed (and documented in
#: the README) so repeated runs emit byte-identical CSV files.
FIG2_RANDOM_SEED = 42

FIG1_T_END = 5.0
FIG1_DTS = (0.1, 0.01)
FIG1_FINEST_DT = 0.001

_PROBLEMS = ("linear", "riccati")
_GRIDS = ("uniform", "random", "ramp")
_FORMATS = ("csv", "json")
_SCHEMES = {kind.value: kind for kind in SchemeKind}


class ConfigError(FdeintError):
    """A run configuration failed to parse or validate."""


@dataclass(frozen=True)
class RunConfig:
    """A fully validated solve run; mirrors the flat key=value config file."""

    problem: str
    alpha: float
    c: float | None
    rho: float | None
    x0: float
    scheme: SchemeKind
    grid: str
    dt: float
    n_steps: int
    seed: int | None
    format: str
    output: str


_CONFIG_KEYS = ("problem", "alpha", "c", "rho", "x0", "scheme", "grid",
                "dt", "n_steps", "seed", "format", "output")


def _fmt(value) -> str:
    """Render one table cell; floats carry 17 significant digits."""
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def _to_float(key: str, value: str) -> float:
    try:
        return float(value)
    except ValueError:
        raise ConfigError(f"{key} must be a number, got {value!r}") from None


def _to_int(key: str, value: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"{key} must be an integer, got {value!r}") from None


def parse_config_lines(text: str) -> dict[str, str]:
    """Parse the flat ``key = value`` config format into raw strings.

    Blank lines and ``#`` comments are ignored; duplicate and unknown keys
    are rejected.
    """
    raw: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        key, sep, value = stripped.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key or not value:
            raise ConfigError(f"config line {lineno}: expected 'key = value', got {line!r}")
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"config line {lineno}: unknown key {key!r}")
        if key in raw:
            raise ConfigError(f"config line {lineno}: duplicate key {key!r}")
        raw[key] = value
    return raw


def build_config(raw: dict[str, str]) -> RunConfig:
    """Validate raw key=value strings into a RunConfig.

    Every diagnostic names the offending field.
    """
    for key in raw:
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"unknown config key {key!r}")

    problem = raw.get("problem", "linear")
    if problem not in _PROBLEMS:
        raise ConfigError(f"problem must be one of {_PROBLEMS}, got {problem!r}")

    alpha = _to_float("alpha", raw.get("alpha", "0.5"))
    if not 0.0 < alpha <= 1.0:
        raise ConfigError(f"alpha must satisfy 0 < alpha <= 1, got {alpha}")

    c = rho = None
    if problem == "linear":
        if "rho" in raw:
            raise ConfigError("rho is only meaningful for the riccati problem")
        c = _to_float("c", raw.get("c", "1"))
        if not c > 0.0:
            raise ConfigError(f"c must be positive for the linear problem, got {c}")
        x0 = _to_float("x0", raw.get("x0", "1"))
    else:
        if "c" in raw:
            raise ConfigError("c is only meaningful for the linear problem")
        rho = _to_float("rho", raw.get("rho", "1"))
        x0 = _to_float("x0", raw.get("x0", "0.5"))

    scheme_name = raw.get("scheme", "pwc")
    if scheme_name not in _SCHEMES:
        raise ConfigError(f"scheme must be one of {tuple(_SCHEMES)}, got {scheme_name!r}")
    scheme = _SCHEMES[scheme_name]

    grid = raw.get("grid", "uniform")
    if grid not in _GRIDS:
        raise ConfigError(f"grid must be one of {_GRIDS}, got {grid!r}")
    if grid != "uniform" and scheme is not SchemeKind.PWC_INTEGRABLIZATION:
        raise ConfigError(f"scheme {scheme_name!r} requires grid = uniform")

    dt = _to_float("dt", raw.get("dt", "0.25"))
    if not dt > 0.0:
        raise ConfigError(f"dt must be positive, got {dt}")
    n_steps = _to_int("n_steps", raw.get("n_steps", "12"))
    if n_steps < 1:
        raise ConfigError(f"n_steps must be at least 1, got {n_steps}")

    seed = None
    if grid == "random":
        if "seed" not in raw:
            raise ConfigError("random grids require a seed (reproducibility is mandatory)")
        seed = _to_int("seed", raw["seed"])
    elif "seed" in raw:
        raise ConfigError("seed is only meaningful for random grids")

    out_format = raw.get("format", "csv")
    if out_format not in _FORMATS:
        raise ConfigError(f"format must be one of {_FORMATS}, got {out_format!r}")
    output = raw.get("output", "-")

    return RunConfig(problem=problem, alpha=alpha, c=c, rho=rho, x0=x0,
                     scheme=scheme, grid=grid, dt=dt, n_steps=n_steps,
                     seed=seed, format=out_format, output=output)


def parse_config_text(text: str) -> RunConfig:
    return build_config(parse_config_lines(text))


def format_config(config: RunConfig) -> str:
    """Serialize a RunConfig back to the flat text format (round-trip exact)."""
    lines = [f"problem = {config.problem}", f"alpha = {_fmt(config.alpha)}"]
    if config.problem == "linear":
        lines.append(f"c = {_fmt(config.c)}")
    else:
        lines.append(f"rho = {_fmt(config.rho)}")
    lines.append(f"x0 = {_fmt(config.x0)}")
    lines.append(f"scheme = {config.scheme.value}")
    lines.append(f"grid = {config.grid}")
    lines.append(f"dt = {_fmt(config.dt)}")
    lines.append(f"n_steps = {config.n_steps}")
    if config.seed is not None:
        lines.append(f"seed = {config.seed}")
    lines.append(f"format = {config.format}")
    lines.append(f"output = {config.output}")
    return "\n".join(lines) + "\n"


def _make_problem(config: RunConfig) -> FdeProblem:
    if config.problem == "linear":
        return linear_problem(config.alpha, config.c, config.x0)
    return riccati_problem(config.alpha, config.rho, config.x0)


def _make_grid(config: RunConfig) -> TimeGrid:
    if config.grid == "uniform":
        return uniform_grid(config.dt, config.n_steps)
    if config.grid == "random":
        return random_grid(config.dt, config.n_steps, config.seed)
    return ramp_grid(config.dt, config.n_steps)


def run_solve(config: RunConfig) -> tuple[list[str], list[dict]]:
    """Execute a solve run; returns (column names, row dicts)."""
    problem = _make_problem(config)
    grid = _make_grid(config)
    traj = SOLVERS[config.scheme](problem, grid)

    columns = ["index", "time", "x"]
    rows = []
    report = None
    if config.problem == "linear":
        report = residuals(traj, exact_linear(config.alpha, config.c, config.x0))
        columns.append("residual")
    for n, t in enumerate(grid.times):
        row = {"index": n, "time": float(t), "x": float(traj.states[n, 0])}
        if report is not None:
            row["residual"] = float(report.residuals[n, 0])
        rows.append(row)
    return columns, rows


@contextlib.contextmanager
def _open_output(path: str):
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def write_rows(columns: list[str], rows: list[dict], out_format: str, stream) -> None:
    """Emit rows as CSV (header + LF endings) or as a JSON array of objects."""
    if out_format == "csv":
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(row.get(col)) for col in columns])
    else:
        json.dump([{col: row.get(col) for col in columns} for row in rows],
                  stream, indent=2)
        stream.write("\n")


def _write_csv_file(path: Path, columns: list[str], rows: list[dict]) -> Path:
    with open(path, "w", newline="") as fh:
        write_rows(columns, rows, "csv", fh)
    return path


def _trajectory_rows(traj) -> list[dict]:
    return [{"index": n, "time": float(t), "x": float(traj.states[n, 0])}
            for n, t in enumerate(traj.grid.times)]


def run_figure(which: str, out_dir, include_finest: bool = False,
               render: bool = True) -> list[Path]:
    """Emit the CSV series behind one of the two standard figures.

    fig1: El-Sayed versus piecewise-constant trajectories of the Riccati
    benchmark (alpha=0.8, rho=1, x0=0.5) at dt in {0.1, 0.01} on [0, 5]
    (``include_finest`` adds dt=0.001). fig2: Grunwald-Letnikov and
    piecewise-constant (uniform / random / ramp steps) trajectories and
    residuals for the linear benchmark (alpha=0.5, c=1, x0=1) with mean
    step 0.25 on [0, 3], plus the exact curve sampled at 301 points.

    Returns the written paths; with ``render`` a PNG of the figure is
    produced alongside the CSV files.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    if which == "fig1":
        problem = riccati_problem(0.8, 1.0, 0.5)
        dts = list(FIG1_DTS) + ([FIG1_FINEST_DT] if include_finest else [])
        solution_series = []
        for dt in dts:
            grid = uniform_grid(dt, round(FIG1_T_END / dt))
            for scheme_name, solver in (("el_sayed", solve_el_sayed), ("pwc", solve_pwc)):
                traj = solver(problem, grid)
                path = out / f"fig1_{scheme_name}_dt{format(dt, 'g')}.csv"
                written.append(_write_csv_file(path, ["index", "time", "x"],
                                               _trajectory_rows(traj)))
                solution_series.append(
                    (f"{scheme_name} dt={format(dt, 'g')}", grid.times, traj.states[:, 0]))
        if render:
            from . import plotting
            series = [plotting.Series(label, t, v, plotting.MARKERS[i % len(plotting.MARKERS)])
                      for i, (label, t, v) in enumerate(solution_series)]
            png = out / "fig1.png"
            plotting.render_comparison(series, png, title="Riccati benchmark")
            written.append(png)
        return written

    if which != "fig2":
        raise ConfigError(f"unknown figure {which!r} (expected fig1 or fig2)")

    alpha, c, x0, dt_mean, n_steps = 0.5, 1.0, 1.0, 0.25, 12
    problem = linear_problem(alpha, c, x0)
    exact = exact_linear(alpha, c, x0)
    series_defs = [
        ("gl", solve_gl, uniform_grid(dt_mean, n_steps)),
        ("pwc_uniform", solve_pwc, uniform_grid(dt_mean, n_steps)),
        ("pwc_random", solve_pwc, random_grid(dt_mean, n_steps, FIG2_RANDOM_SEED)),
        ("pwc_ramp", solve_pwc, ramp_grid(dt_mean, n_steps)),
    ]
    solution_series = []
    residual_series = []
    for name, solver, grid in series_defs:
        traj = solver(problem, grid)
        report = residuals(traj, exact)
        written.append(_write_csv_file(out / f"fig2_{name}.csv",
                                       ["index", "time", "x"], _trajectory_rows(traj)))
        res_rows = [{"index": m, "time": float(t), "residual": float(report.residuals[m, 0])}
                    for m, t in enumerate(grid.times)]
        written.append(_write_csv_file(out / f"fig2_residual_{name}.csv",
                                       ["index", "time", "residual"], res_rows))
        solution_series.append((name, grid.times, traj.states[:, 0]))
        residual_series.append((name, grid.times, report.residuals[:, 0]))

    exact_times = np.arange(301) * (3.0 / 300.0)
    exact_values = [float(exact.evaluate(t)[0]) for t in exact_times]
    exact_rows = [{"time": float(t), "x": v} for t, v in zip(exact_times, exact_values)]
    written.append(_write_csv_file(out / "fig2_exact.csv", ["time", "x"], exact_rows))

    if render:
        from . import plotting
        sol = [plotting.Series(label, t, v, plotting.MARKERS[i])
               for i, (label, t, v) in enumerate(solution_series)]
        sol.append(plotting.Series("exact", exact_times, np.array(exact_values), None))
        res = [plotting.Series(label, t, v, plotting.MARKERS[i])
               for i, (label, t, v) in enumerate(residual_series)]
        png = out / "fig2.png"
        plotting.render_solution_and_residuals(sol, res, png, title="Linear benchmark")
        written.append(png)
    return written


def run_convergence(config: RunConfig, t_end: float, dts: list[float],
                    reference: ReferenceSolution | None = None) -> ConvergenceTable:
    """Convergence study for the configured problem and scheme."""
    problem = _make_problem(config)
    if reference is None:
        if config.problem == "linear":
            reference = exact_linear(config.alpha, config.c, config.x0)
        else:
            reference = fine_grid_reference(problem, t_end)
    return convergence_study(problem, reference, t_end, dts, scheme=config.scheme)


class _Parser(argparse.ArgumentParser):
    # keep the documented exit codes: usage problems are config errors (1),
    # not argparse's default exit status
    def error(self, message):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fdeint",
                     description="History-dependent schemes for Caputo fractional IVPs")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", parents=[], help="integrate a built-in problem")
    solve.add_argument("--config", help="path to a flat key=value config file")
    solve.add_argument("--problem", choices=_PROBLEMS)
    solve.add_argument("--alpha", type=float, help="fractional order in (0, 1]")
    solve.add_argument("--c", type=float, help="decay coefficient (linear problem)")
    solve.add_argument("--rho", type=float, help="quadratic coefficient (riccati problem)")
    solve.add_argument("--x0", type=float, help="initial state")
    solve.add_argument("--scheme", choices=tuple(_SCHEMES))
    solve.add_argument("--grid", choices=_GRIDS)
    solve.add_argument("--dt", type=float, help="time step (mean step for random/ramp)")
    solve.add_argument("--n-steps", type=int, dest="n_steps")
    solve.add_argument("--t-end", type=float, dest="t_end",
                       help="derive n_steps as round(t_end / dt)")
    solve.add_argument("--seed", type=int, help="random-grid seed")
    solve.add_argument("--format", choices=_FORMATS)
    solve.add_argument("--output", help="output path, or - for stdout")

    figure = sub.add_parser("figure", help="emit the data behind the comparison figures")
    figure.add_argument("which", choices=("fig1", "fig2"))
    figure.add_argument("--out-dir", default=".", dest="out_dir")
    figure.add_argument("--fine", action="store_true",
                        help="fig1 only: also emit the dt=0.001 series")
    figure.add_argument("--no-plot", action="store_true",
                        help="skip PNG rendering, emit CSV data only")

    conv = sub.add_parser("convergence", help="error versus step size table")
    conv.add_argument("--problem", choices=_PROBLEMS)
    conv.add_argument("--alpha", type=float)
    conv.add_argument("--c", type=float)
    conv.add_argument("--rho", type=float)
    conv.add_argument("--x0", type=float)
    conv.add_argument("--scheme", choices=tuple(_SCHEMES))
    conv.add_argument("--t-end", type=float, default=3.0, dest="t_end")
    conv.add_argument("--dts", required=True,
                      help="comma-separated strictly decreasing steps, e.g. 0.25,0.125")
    conv.add_argument("--format", choices=_FORMATS)
    conv.add_argument("--output", help="output path, or - for stdout")
    conv.add_argument("--plot", help="optional path for a log-log error plot")

    return parser


def _solve_raw_from_args(args) -> dict[str, str]:
    raw: dict[str, str] = {}
    if args.config:
        raw.update(parse_config_lines(Path(args.config).read_text()))
    for key in ("problem", "alpha", "c", "rho", "x0", "scheme", "grid",
                "dt", "n_steps", "seed", "format", "output"):
        value = getattr(args, key, None)
        if value is not None:
            raw[key] = str(value)
    if getattr(args, "t_end", None) is not None:
        if "n_steps" in raw and args.n_steps is not None:
            raise ConfigError("give either n_steps or t_end, not both")
        dt = _to_float("dt", raw.get("dt", "0.25"))
        raw["n_steps"] = str(max(1, round(args.t_end / dt)))
    return raw


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "solve":
            config = build_config(_solve_raw_from_args(args))
            columns, rows = run_solve(config)
            with _open_output(config.output) as stream:
                write_rows(columns, rows, config.format, stream)
        elif args.command == "figure":
            written = run_figure(args.which, args.out_dir,
                                 include_finest=args.fine, render=not args.no_plot)
            for path in written:
                print(f"wrote {path}")
        else:
            raw = {key: str(getattr(args, key)) for key in
                   ("problem", "alpha", "c", "rho", "x0", "scheme")
                   if getattr(args, key, None) is not None}
            config = build_config(raw)
            try:
                dts = [float(part) for part in args.dts.split(",") if part.strip()]
            except ValueError:
                raise ConfigError(f"dts must be comma-separated numbers, got {args.dts!r}") from None
            table = run_convergence(config, args.t_end, dts)
            columns = ["dt", "max_abs_error", "observed_ratio"]
            rows = [{"dt": r.dt, "max_abs_error": r.max_abs_error,
                     "observed_ratio": r.observed_ratio} for r in table.rows]
            with _open_output(args.output or "-") as stream:
                write_rows(columns, rows, args.format or "csv", stream)
            if args.plot:
                from . import plotting
                plotting.render_convergence([r.dt for r in table.rows],
                                            [r.max_abs_error for r in table.rows],
                                            args.plot)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SchemeFailureError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except (FdeintError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def entrypoint() -> None:
    raise SystemExit(main())
