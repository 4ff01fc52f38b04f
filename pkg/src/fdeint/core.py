"""Problem, grid, and trajectory data model shared by every scheme.

All types are immutable after construction (frozen dataclasses over
read-only arrays), so they can be shared freely between threads and
between concurrent solver calls.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable

import numpy as np

#: Relative tolerance under which grid increments count as uniform.
UNIFORMITY_RTOL = 1e-12

VectorField = Callable[[float, np.ndarray], "np.typing.ArrayLike"]


class SchemeKind(enum.Enum):
    """Which discretization produced a trajectory."""

    PWC_INTEGRABLIZATION = "pwc"
    GRUNWALD_LETNIKOV = "gl"
    EL_SAYED = "el-sayed"


def _frozen_array(values, name: str) -> np.ndarray:
    arr = np.array(values, dtype=float)
    if arr.ndim != 1 or arr.size < 1:
        raise ValueError(f"{name} must be a non-empty 1-d real vector")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class FdeProblem:
    """A Caputo initial-value problem D^alpha x(t) = f(t, x(t)), x(0) = x0.

    alpha is the fractional order in (0, 1] (alpha = 1 recovers a classical
    first-order ODE). x0 is the initial state; scalar problems are stored as
    one-dimensional vectors of length 1. field is the (possibly nonlinear,
    possibly time-dependent) right-hand side f(t, x) -> dx; it must be
    deterministic, i.e. return equal outputs for equal inputs. Autonomous
    problems simply ignore the time argument.
    """

    alpha: float
    x0: np.ndarray
    field: VectorField

    def __post_init__(self):
        alpha = float(self.alpha)
        if not 0.0 < alpha <= 1.0:
            raise ValueError(f"fractional order alpha must lie in (0, 1], got {alpha}")
        x0 = _frozen_array(np.atleast_1d(self.x0), "x0")
        if not np.all(np.isfinite(x0)):
            raise ValueError("x0 must be finite")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "x0", x0)

    @property
    def dim(self) -> int:
        return self.x0.size

    def eval_field(self, t: float, x: np.ndarray) -> np.ndarray:
        """Evaluate f(t, x) and coerce the result to a state-shaped vector."""
        out = np.atleast_1d(np.asarray(self.field(t, x), dtype=float))
        if out.shape != self.x0.shape:
            raise ValueError(
                f"vector field returned shape {out.shape}, expected {self.x0.shape}"
            )
        return out


@dataclass(frozen=True, eq=False)
class TimeGrid:
    """A strictly increasing partition 0 = tau_0 < tau_1 < ... < tau_N."""

    times: np.ndarray

    def __post_init__(self):
        times = _frozen_array(self.times, "times")
        if times.size < 2:
            raise ValueError("a grid needs at least one step (two points)")
        if times[0] != 0.0:
            raise ValueError(f"grids start at tau_0 = 0, got {times[0]}")
        if not np.all(np.diff(times) > 0.0):
            raise ValueError("grid times must be strictly increasing")
        object.__setattr__(self, "times", times)

    @property
    def n_steps(self) -> int:
        return self.times.size - 1

    @property
    def t_end(self) -> float:
        return float(self.times[-1])

    @property
    def increments(self) -> np.ndarray:
        return np.diff(self.times)

    def is_uniform(self, rtol: float = UNIFORMITY_RTOL) -> bool:
        """True when every increment matches the first to relative tolerance rtol."""
        incs = self.increments
        return bool(np.all(np.abs(incs - incs[0]) <= rtol * incs[0]))


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Grid times paired with the solution states a scheme produced.

    states[0] is the initial condition itself, stored verbatim.
    """

    grid: TimeGrid
    states: np.ndarray
    scheme: SchemeKind

    def __post_init__(self):
        states = np.array(self.states, dtype=float)
        if states.ndim != 2 or states.shape[0] != self.grid.times.size:
            raise ValueError(
                "states must have one row per grid time "
                f"(got {states.shape} for {self.grid.times.size} times)"
            )
        states.setflags(write=False)
        object.__setattr__(self, "states", states)

    @property
    def times(self) -> np.ndarray:
        return self.grid.times


def uniform_grid(dt: float, n_steps: int) -> TimeGrid:
    """Uniform grid [0, dt, 2 dt, ..., n_steps dt].

    Each time is computed as i * dt rather than by repeated addition, so the
    grid carries no accumulation drift.
    """
    dt = float(dt)
    if not dt > 0.0:
        raise ValueError(f"dt must be positive, got {dt}")
    if n_steps < 1:
        raise ValueError(f"n_steps must be at least 1, got {n_steps}")
    return TimeGrid(np.arange(n_steps + 1) * dt)


def random_grid(dt_mean: float, n_steps: int, seed: int) -> TimeGrid:
    """Grid with i.i.d. increments drawn uniformly from (0, 2 dt_mean).

    The expected increment is dt_mean. The draw is fully determined by the
    seed: equal seeds give identical grids.
    """
    dt_mean = float(dt_mean)
    if not dt_mean > 0.0:
        raise ValueError(f"dt_mean must be positive, got {dt_mean}")
    if n_steps < 1:
        raise ValueError(f"n_steps must be at least 1, got {n_steps}")
    rng = np.random.default_rng(seed)
    while True:
        increments = rng.uniform(0.0, 2.0 * dt_mean, n_steps)
        times = np.concatenate([[0.0], np.cumsum(increments)])
        # uniform() includes its left edge; redraw the (measure-zero) cases
        # that would break strict monotonicity
        if np.all(np.diff(times) > 0.0):
            return TimeGrid(times)


def ramp_grid(dt_mean: float, n_steps: int) -> TimeGrid:
    """Grid whose increments grow linearly, with mean increment dt_mean.

    Increment j (1-based) is 2 dt_mean j / (n_steps + 1), so the steps are
    strictly increasing, the mean step is exactly dt_mean, and the final
    time equals n_steps * dt_mean up to rounding. Small early steps sample
    the fast initial transient of fractional dynamics more closely.
    """
    dt_mean = float(dt_mean)
    if not dt_mean > 0.0:
        raise ValueError(f"dt_mean must be positive, got {dt_mean}")
    if n_steps < 1:
        raise ValueError(f"n_steps must be at least 1, got {n_steps}")
    increments = 2.0 * dt_mean * np.arange(1, n_steps + 1) / (n_steps + 1)
    return TimeGrid(np.concatenate([[0.0], np.cumsum(increments)]))
