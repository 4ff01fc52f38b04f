"""History-dependent difference schemes for Caputo fractional initial-value
problems.

The package integrates D^alpha x(t) = f(t, x(t)), x(0) = x0 with
0 < alpha <= 1 by replacing the vector field with a piecewise-constant
function of time and sampling the exactly solved approximation at the grid
times (``solve_pwc``, uniform or non-uniform grids). A Grunwald-Letnikov
discretization (``solve_gl``) and the non-convergent first-order El-Sayed
recurrence (``solve_el_sayed``) are included as comparators, together with
exact/quadrature/fine-grid reference solutions and residual & convergence
analysis helpers. The ``fdeint`` CLI exposes all of it and reproduces the
standard comparison figures.
"""

from .analysis import (
    ConvergenceRow,
    ConvergenceTable,
    ResidualReport,
    convergence_study,
    residuals,
)
from .core import (
    FdeProblem,
    SchemeKind,
    TimeGrid,
    Trajectory,
    ramp_grid,
    random_grid,
    uniform_grid,
)
from .errors import (
    FdeintError,
    NonUniformGridError,
    SchemeFailureError,
    SeriesConvergenceError,
)
from .problems import linear_problem, riccati_problem
from .reference import (
    ReferenceKind,
    ReferenceSolution,
    exact_linear,
    fine_grid_reference,
    quadrature_reference,
)
from .schemes import GlWeights, gl_weights, solve_el_sayed, solve_gl, solve_pwc
from .special import MLEvalConfig, gamma, mittag_leffler

__version__ = "0.1.0"

__all__ = [
    "ConvergenceRow",
    "ConvergenceTable",
    "FdeProblem",
    "FdeintError",
    "GlWeights",
    "MLEvalConfig",
    "NonUniformGridError",
    "ReferenceKind",
    "ReferenceSolution",
    "ResidualReport",
    "SchemeFailureError",
    "SchemeKind",
    "SeriesConvergenceError",
    "TimeGrid",
    "Trajectory",
    "convergence_study",
    "exact_linear",
    "fine_grid_reference",
    "gamma",
    "gl_weights",
    "linear_problem",
    "mittag_leffler",
    "quadrature_reference",
    "ramp_grid",
    "random_grid",
    "residuals",
    "riccati_problem",
    "solve_el_sayed",
    "solve_gl",
    "solve_pwc",
    "uniform_grid",
]
