"""Residuals against references and empirical convergence studies."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import FdeProblem, SchemeKind, Trajectory, uniform_grid
from .reference import ReferenceSolution
from .schemes import SOLVERS


@dataclass(frozen=True, eq=False)
class ResidualReport:
    """Per-point differences between a trajectory and a reference.

    residuals[n] = state_n - reference(tau_n), componentwise. max_abs is the
    largest residual magnitude over the whole grid (infinity norm across
    state components); at_first_quarter_max restricts that maximum to grid
    points with tau <= t_end / 4, where fractional dynamics move fastest.
    """

    grid_times: np.ndarray
    residuals: np.ndarray
    max_abs: float
    at_first_quarter_max: float


@dataclass(frozen=True)
class ConvergenceRow:
    dt: float
    max_abs_error: float
    observed_ratio: float | None


@dataclass(frozen=True)
class ConvergenceTable:
    """Error-versus-step-size table; observed_ratio is the error shrink
    factor relative to the previous (coarser) row."""

    rows: tuple[ConvergenceRow, ...]


def residuals(trajectory: Trajectory, reference: ReferenceSolution) -> ResidualReport:
    """Compare a trajectory against a reference at the trajectory's own times."""
    times = trajectory.grid.times
    res = np.empty_like(trajectory.states)
    for n, t in enumerate(times):
        res[n] = trajectory.states[n] - reference.evaluate(float(t))
    res.setflags(write=False)
    mags = np.max(np.abs(res), axis=1)
    quarter = times[-1] / 4.0
    return ResidualReport(
        grid_times=times,
        residuals=res,
        max_abs=float(np.max(mags)),
        at_first_quarter_max=float(np.max(mags[times <= quarter])),
    )


def convergence_study(
    problem: FdeProblem,
    reference: ReferenceSolution,
    t_end: float,
    dts: list[float],
    scheme: SchemeKind = SchemeKind.PWC_INTEGRABLIZATION,
) -> ConvergenceTable:
    """Error at the shared final time t_end for a decreasing list of steps.

    Each dt must divide t_end to within rounding (n_steps = round(t_end/dt)).
    Comparing at the one shared time keeps grids with different steps
    directly comparable without interpolation error creeping in.
    """
    t_end = float(t_end)
    if not t_end > 0.0:
        raise ValueError(f"t_end must be positive, got {t_end}")
    if len(dts) == 0:
        raise ValueError("dts must be non-empty")
    if any(not d > 0.0 for d in dts):
        raise ValueError("all dts must be positive")
    if any(b >= a for a, b in zip(dts, dts[1:])):
        raise ValueError("dts must be strictly decreasing")

    solver = SOLVERS[scheme]
    rows = []
    prev_err = None
    for dt in dts:
        n_steps = round(t_end / dt)
        if n_steps < 1:
            raise ValueError(f"dt {dt} exceeds t_end {t_end}")
        grid = uniform_grid(dt, n_steps)
        traj = solver(problem, grid)
        ref_state = reference.evaluate(grid.t_end)
        err = float(np.max(np.abs(traj.states[-1] - ref_state)))
        ratio = None if prev_err is None else prev_err / err
        rows.append(ConvergenceRow(dt=float(dt), max_abs_error=err, observed_ratio=ratio))
        prev_err = err
    return ConvergenceTable(rows=tuple(rows))
