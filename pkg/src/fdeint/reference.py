"""Independent reference solutions to hold the schemes against.

Three flavours: the exact Mittag-Leffler solution of the linear problem, a
direct summation of the integral-form (step-function) solution of the
piecewise-constant approximation, and a high-resolution self-convergence
reference for problems without a closed form.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import FdeProblem, TimeGrid, uniform_grid
from .schemes import solve_pwc
from .special import MLEvalConfig, gamma, mittag_leffler

#: Default step count for the fine-grid reference; makes its own error
#: negligible next to any desk-scale coarse grid.
DEFAULT_FINE_STEPS = 2 ** 14

_MIN_FINE_STEPS = 2 ** 12


class ReferenceKind(enum.Enum):
    EXACT_LINEAR = "exact-linear"
    QUADRATURE = "quadrature"
    FINE_GRID = "fine-grid"


@dataclass(frozen=True, eq=False)
class ReferenceSolution:
    """A reference trajectory exposed as a function of time.

    evaluate(t) returns the state vector at time t; evaluate(0) is the
    initial condition of the problem the reference was built for.
    """

    kind: ReferenceKind
    evaluate: Callable[[float], np.ndarray]

    def __call__(self, t: float) -> np.ndarray:
        return self.evaluate(t)


def exact_linear(
    alpha: float,
    c: float,
    x0: float,
    config: MLEvalConfig | None = None,
) -> ReferenceSolution:
    """Exact solution x(t) = x0 E_alpha(-c t^alpha) of D^alpha x = -c x."""
    alpha = float(alpha)
    c = float(c)
    x0 = float(x0)
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"order alpha must lie in (0, 1], got {alpha}")
    if not c > 0.0:
        raise ValueError(f"decay coefficient c must be positive, got {c}")
    ml_config = MLEvalConfig() if config is None else config

    def evaluate(t: float) -> np.ndarray:
        t = float(t)
        if t < 0.0:
            raise ValueError(f"time must be non-negative, got {t}")
        return np.array([x0 * mittag_leffler(alpha, -c * t ** alpha, ml_config)])

    return ReferenceSolution(kind=ReferenceKind.EXACT_LINEAR, evaluate=evaluate)


def quadrature_reference(problem: FdeProblem, grid: TimeGrid) -> ReferenceSolution:
    """Integral-route evaluation of the piecewise-constant approximation.

    The constant-in-time field takes a jump of f_m - f_{m-1} at each tau_m,
    so the solution is the superposition of power-law responses

        x(t) = x0 + t^a / Gamma(1+a) * f_0
             + sum_{m: tau_m <= t} (t - tau_m)^a / Gamma(1+a) * (f_m - f_{m-1}).

    The states feeding f come from a solve_pwc run on the same grid (the
    equivalence being checked is between the two formulas given the same
    states), but the field values are re-evaluated here and the sum is
    accumulated scalar-by-scalar with math.fsum: nothing of the scheme's
    convolution code is reused. At the grid times this must agree with
    solve_pwc to roundoff.
    """
    traj = solve_pwc(problem, grid)
    times = grid.times
    a = problem.alpha
    gam = gamma(1.0 + a)
    fvals = [problem.eval_field(float(times[m]), traj.states[m])
             for m in range(times.size - 1)]
    jumps = [fvals[m] - fvals[m - 1] for m in range(1, len(fvals))]
    x0 = problem.x0
    t_end = float(times[-1])

    def evaluate(t: float) -> np.ndarray:
        t = float(t)
        if not 0.0 <= t <= t_end:
            raise ValueError(f"time {t} outside the grid span [0, {t_end}]")
        out = np.empty(problem.dim)
        for j in range(problem.dim):
            terms = [x0[j], t ** a / gam * fvals[0][j]]
            for m in range(1, len(fvals)):
                if times[m] <= t:
                    terms.append((t - times[m]) ** a / gam * jumps[m - 1][j])
            out[j] = math.fsum(terms)
        return out

    return ReferenceSolution(kind=ReferenceKind.QUADRATURE, evaluate=evaluate)


def fine_grid_reference(
    problem: FdeProblem,
    t_end: float,
    refinement: int = DEFAULT_FINE_STEPS,
) -> ReferenceSolution:
    """Piecewise-linear interpolant of a solve_pwc run on a fine uniform grid.

    A numerical reference, not ground truth: use it where no closed form
    exists and keep the coarse grids it judges much coarser than
    `refinement` steps.
    """
    t_end = float(t_end)
    if not t_end > 0.0:
        raise ValueError(f"t_end must be positive, got {t_end}")
    if refinement < _MIN_FINE_STEPS:
        raise ValueError(
            f"fine-grid reference needs at least {_MIN_FINE_STEPS} steps, got {refinement}"
        )
    grid = uniform_grid(t_end / refinement, refinement)
    traj = solve_pwc(problem, grid)
    times = grid.times
    span = float(times[-1])

    def evaluate(t: float) -> np.ndarray:
        t = float(t)
        if t < 0.0 or t > span * (1.0 + 1e-12):
            raise ValueError(f"time {t} outside the reference span [0, {span}]")
        return np.array([
            np.interp(t, times, traj.states[:, j]) for j in range(problem.dim)
        ])

    return ReferenceSolution(kind=ReferenceKind.FINE_GRID, evaluate=evaluate)
