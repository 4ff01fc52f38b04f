"""Shared test helpers: scale-aware comparison and naive scalar oracles.

The naive solvers below re-derive the schemes with plain Python loops and
no numpy vectorization, accumulating terms in a fixed order. They exist so
the package implementations can be checked against independently written
code, including bitwise formula-reduction checks on dyadic steps.
"""

import math

import numpy as np


def rel_gap(a, b) -> float:
    """max |a - b| scaled by max(|b|, 1)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return float(np.max(np.abs(a - b)) / max(np.max(np.abs(b)), 1.0))


def assert_rel_close(a, b, rtol: float) -> None:
    gap = rel_gap(a, b)
    assert gap <= rtol, f"relative gap {gap:.3e} exceeds {rtol:.1e}"


def naive_pwc_nonuniform(alpha, f, x0, times):
    """Scalar history recurrence written against the grid times directly."""
    g = math.gamma(1.0 + alpha)
    xs = [x0]
    fs = [f(times[0], x0)]
    for n in range(1, len(times)):
        acc = x0 + times[n] ** alpha / g * fs[0]
        for m in range(1, n):
            acc += (times[n] - times[m]) ** alpha / g * (fs[m] - fs[m - 1])
        xs.append(acc)
        fs.append(f(times[n], acc))
    return xs


def naive_pwc_uniform(alpha, f, x0, dt, n_steps):
    """Scalar history recurrence written against step multiples (n - m) dt."""
    g = math.gamma(1.0 + alpha)
    xs = [x0]
    fs = [f(0.0, x0)]
    for n in range(1, n_steps + 1):
        acc = x0 + (n * dt) ** alpha / g * fs[0]
        for m in range(1, n):
            acc += ((n - m) * dt) ** alpha / g * (fs[m] - fs[m - 1])
        xs.append(acc)
        fs.append(f(n * dt, acc))
    return xs


def forward_euler(f, x0, dt, n_steps):
    """Hand-rolled forward Euler loop, the alpha = 1 oracle."""
    xs = [x0]
    for n in range(n_steps):
        xs.append(xs[-1] + dt * f(n * dt, xs[-1]))
    return xs
