"""The three discretizations of a Caputo initial-value problem.

solve_pwc is the workhorse: the vector field is replaced by a function that
is constant on each grid interval, the resulting equation is solved exactly,
and the closed form is sampled at the grid times. That yields an explicit
recurrence whose order grows with every step,

    x(tau_n) = x0 + tau_n^a / Gamma(1+a) * f(0, x0)
             + sum_{m=1}^{n-1} (tau_n - tau_m)^a / Gamma(1+a)
                               * [f(tau_m, x_m) - f(tau_{m-1}, x_{m-1})],

and works on arbitrary strictly increasing grids. solve_gl is the classic
Grunwald-Letnikov discretization (uniform grids only), kept as an accuracy
comparator. solve_el_sayed is the first-order recurrence found in parts of
the literature; it cannot carry the memory of the fractional dynamics and
does not converge to them as dt -> 0 for a < 1, and is provided purely as
the incorrect comparator.

Every solve call is single-threaded and self-contained; distinct calls on
shared (immutable) problems and grids may run concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import FdeProblem, SchemeKind, TimeGrid, Trajectory
from .errors import NonUniformGridError, SchemeFailureError
from .special import gamma


@dataclass(frozen=True, eq=False)
class GlWeights:
    """Signed fractional binomial weights g_m = (-1)^m binom(alpha, m).

    g_0 = 1 and g_1 = -alpha; for 0 < alpha < 1 the remaining weights are
    negative and increase monotonically toward zero, which is how the
    scheme's memory of the history fades.
    """

    alpha: float
    weights: np.ndarray


def gl_weights(alpha: float, n: int) -> GlWeights:
    """Weights g_0 ... g_n by the recurrence g_m = g_{m-1} (m - 1 - alpha) / m."""
    alpha = float(alpha)
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"order alpha must lie in (0, 1], got {alpha}")
    if n < 0:
        raise ValueError(f"weight count must be non-negative, got {n}")
    w = np.empty(n + 1)
    w[0] = 1.0
    for m in range(1, n + 1):
        w[m] = w[m - 1] * (m - 1 - alpha) / m
    w.setflags(write=False)
    return GlWeights(alpha=alpha, weights=w)


def _checked_field(problem: FdeProblem, scheme_name: str, t: float, x, step: int):
    out = problem.eval_field(t, x)
    if not np.all(np.isfinite(out)):
        raise SchemeFailureError(scheme_name, step, t)
    return out


def _checked_state(x: np.ndarray, scheme_name: str, step: int, t: float) -> np.ndarray:
    if not np.all(np.isfinite(x)):
        raise SchemeFailureError(scheme_name, step, t)
    return x


def _require_uniform(grid: TimeGrid, scheme_name: str) -> float:
    if not grid.is_uniform():
        raise NonUniformGridError(f"{scheme_name} requires a uniform grid")
    return float(grid.times[1])


def solve_pwc(problem: FdeProblem, grid: TimeGrid) -> Trajectory:
    """Piecewise-constant integration of the problem over the grid.

    Explicit: each state is assembled from already-known states only. The
    vector field is evaluated exactly once per grid point (N evaluations for
    N steps) and cached; the O(N^2) cost sits in the power-law weighted
    history sums. On uniform grids the N distinct weights ((n-m) dt)^a are
    precomputed once; non-uniform grids have no repeated differences, so the
    weights are formed per step.
    """
    name = "piecewise-constant scheme"
    times = grid.times
    n_pts = times.size
    a = problem.alpha
    gam = gamma(1.0 + a)

    states = np.empty((n_pts, problem.dim))
    states[0] = problem.x0
    fvals = np.empty_like(states)
    fvals[0] = _checked_field(problem, name, float(times[0]), states[0], 0)
    jumps = np.empty_like(states)  # jumps[m] = f_m - f_{m-1}, m >= 1

    pow_table = None
    if grid.is_uniform():
        pow_table = (np.arange(n_pts) * times[1]) ** a / gam

    for i in range(1, n_pts):
        x = states[0] + (times[i] ** a / gam) * fvals[0]
        if i > 1:
            if pow_table is not None:
                weights = pow_table[i - 1:0:-1]
            else:
                weights = (times[i] - times[1:i]) ** a / gam
            x = x + weights @ jumps[1:i]
        states[i] = _checked_state(x, name, i, float(times[i]))
        if i < n_pts - 1:
            fvals[i] = _checked_field(problem, name, float(times[i]), states[i], i)
            jumps[i] = fvals[i] - fvals[i - 1]
    return Trajectory(grid=grid, states=states, scheme=SchemeKind.PWC_INTEGRABLIZATION)


def solve_gl(problem: FdeProblem, grid: TimeGrid) -> Trajectory:
    """Grunwald-Letnikov discretization on a uniform grid.

    x(n dt) = x0 + dt^a f(tau_{n-1}, x_{n-1})
            - sum_{m=1}^{n-1} g_m [x((n-m) dt) - x0],

    with the signed binomial weights of :func:`gl_weights`. The field is
    taken at the previous point, keeping the scheme explicit for arbitrary
    f; for f(x) = -c x this is the textbook form. At alpha = 1 the weights
    terminate (1, -1, 0, ...) and the recurrence collapses to forward Euler.
    """
    name = "Grunwald-Letnikov scheme"
    dt = _require_uniform(grid, name)
    times = grid.times
    n_pts = times.size
    w = gl_weights(problem.alpha, n_pts - 1).weights
    dt_alpha = dt ** problem.alpha

    states = np.empty((n_pts, problem.dim))
    states[0] = problem.x0
    devs = np.empty_like(states)  # devs[m] = x_m - x0
    devs[0] = 0.0
    f_prev = _checked_field(problem, name, float(times[0]), states[0], 0)

    for i in range(1, n_pts):
        x = states[0] + dt_alpha * f_prev
        if i > 1:
            x = x - w[1:i] @ devs[i - 1:0:-1]
        states[i] = _checked_state(x, name, i, float(times[i]))
        devs[i] = states[i] - states[0]
        if i < n_pts - 1:
            f_prev = _checked_field(problem, name, float(times[i]), states[i], i)
    return Trajectory(grid=grid, states=states, scheme=SchemeKind.GRUNWALD_LETNIKOV)


def solve_el_sayed(problem: FdeProblem, grid: TimeGrid) -> Trajectory:
    """First-order comparator recurrence on a uniform grid.

    x((n+1) dt) = x(n dt) + dt^a / Gamma(1+a) * f(tau_n, x(n dt)).

    Its first step coincides with solve_pwc's, and at alpha = 1 it is
    forward Euler, but for alpha < 1 it retains no history and fails to
    approach the fractional dynamics as dt -> 0.
    """
    name = "El-Sayed scheme"
    dt = _require_uniform(grid, name)
    times = grid.times
    n_pts = times.size
    coeff = dt ** problem.alpha / gamma(1.0 + problem.alpha)

    states = np.empty((n_pts, problem.dim))
    states[0] = problem.x0
    for i in range(1, n_pts):
        f_prev = _checked_field(problem, name, float(times[i - 1]), states[i - 1], i - 1)
        states[i] = _checked_state(
            states[i - 1] + coeff * f_prev, name, i, float(times[i])
        )
    return Trajectory(grid=grid, states=states, scheme=SchemeKind.EL_SAYED)


#: Scheme dispatch used by the analysis helpers and the CLI.
SOLVERS = {
    SchemeKind.PWC_INTEGRABLIZATION: solve_pwc,
    SchemeKind.GRUNWALD_LETNIKOV: solve_gl,
    SchemeKind.EL_SAYED: solve_el_sayed,
}
