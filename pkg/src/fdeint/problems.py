"""Built-in benchmark problems used by the CLI and the test suite."""

from __future__ import annotations

import numpy as np

from .core import FdeProblem


def linear_problem(alpha: float, c: float, x0: float) -> FdeProblem:
    """Linear relaxation D^alpha x = -c x with x(0) = x0.

    For c > 0 the exact solution is x0 E_alpha(-c t^alpha); see
    :func:`fdeint.reference.exact_linear`.
    """
    c = float(c)

    def field(t: float, x: np.ndarray) -> np.ndarray:
        return -c * x

    return FdeProblem(alpha=alpha, x0=x0, field=field)


def riccati_problem(alpha: float, rho: float, x0: float) -> FdeProblem:
    """Riccati-type problem D^alpha x = 1 - rho x^2 with x(0) = x0.

    For rho > 0 the dynamics relax toward the equilibrium x = 1/sqrt(rho);
    there is no elementary closed-form solution, so comparisons use the
    fine-grid reference.
    """
    rho = float(rho)

    def field(t: float, x: np.ndarray) -> np.ndarray:
        return 1.0 - rho * x * x

    return FdeProblem(alpha=alpha, x0=x0, field=field)
