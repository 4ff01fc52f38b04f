"""Rendering of the comparison figures the CLI emits next to its CSV data.

Uses the object-oriented matplotlib API (no pyplot), so rendering is
headless-safe and leaves no global state behind.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from matplotlib.figure import Figure

#: Marker cycle for scheme-comparison plots.
MARKERS = ("o", "s", "D", "^", "v", "x")


@dataclass(frozen=True, eq=False)
class Series:
    """One plottable series; marker=None draws a solid line instead."""

    label: str
    times: np.ndarray
    values: np.ndarray
    marker: str | None = "o"


def _draw(ax, series: Series) -> None:
    if series.marker is None:
        ax.plot(series.times, series.values, "-", color="black", lw=1.2,
                label=series.label)
    else:
        ax.plot(series.times, series.values, linestyle="none",
                marker=series.marker, markersize=5, fillstyle="none",
                label=series.label)


def render_comparison(series: list[Series], path, ylabel: str = "x(t)",
                      title: str | None = None) -> None:
    """Single-panel marker plot of several trajectories over time."""
    fig = Figure(figsize=(6.8, 4.6))
    ax = fig.add_subplot(111)
    for s in series:
        _draw(ax, s)
    ax.set_xlabel("t")
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)


def render_solution_and_residuals(solutions: list[Series],
                                  residual_series: list[Series],
                                  path, title: str | None = None) -> None:
    """Two panels: trajectories (left) and their residuals (right)."""
    fig = Figure(figsize=(10.5, 4.4))
    ax_sol = fig.add_subplot(121)
    ax_res = fig.add_subplot(122)
    for s in solutions:
        _draw(ax_sol, s)
    for s in residual_series:
        _draw(ax_res, s)
    ax_res.axhline(0.0, color="gray", lw=0.6)
    ax_sol.set_xlabel("t")
    ax_sol.set_ylabel("x(t)")
    ax_res.set_xlabel("t")
    ax_res.set_ylabel("residual")
    ax_sol.legend(fontsize=8)
    ax_res.legend(fontsize=8)
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)


def render_convergence(dts, errors, path, label: str = "max abs error") -> None:
    """Log-log error-versus-step plot for a convergence table."""
    fig = Figure(figsize=(5.4, 4.2))
    ax = fig.add_subplot(111)
    ax.loglog(np.asarray(dts), np.asarray(errors), "o-", label=label)
    ax.set_xlabel("dt")
    ax.set_ylabel("error at final time")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
