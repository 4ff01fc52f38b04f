#!/usr/bin/env python3
"""Regenerate the golden fixtures under tests/golden/.

Everything here is computed with 60-digit mpmath arithmetic through code
paths that share nothing with the package: the gamma function comes from a
200-step argument shift followed by a Stirling series, erf from its Taylor
series, the Mittag-Leffler values from a term-by-term series on top of the
high-precision gamma, and the benchmark trajectory from a plain scalar
recurrence. Values are rounded to the nearest double only when written out.

Requires mpmath (development-time only, not a package dependency). Run from
the repository root:

    python tools/gen_goldens.py
"""

import json
import pathlib

from mpmath import mp, mpf

mp.dps = 60

# B_2 .. B_20, enough for ~1e-40 accuracy once the argument is shifted to ~200
_BERNOULLI = [
    (1, 6), (-1, 30), (1, 42), (-1, 30), (5, 66),
    (-691, 2730), (7, 6), (-3617, 510), (43867, 798), (-174611, 330),
]

_SHIFT = 200


def hp_gamma(z):
    """Gamma(z) for z > 0 via recurrence shift + Stirling series."""
    z = mpf(z)
    w = z + _SHIFT
    lg = (w - mpf(1) / 2) * mp.log(w) - w + mp.log(2 * mp.pi) / 2
    for k, (p, q) in enumerate(_BERNOULLI, start=1):
        lg += mpf(p) / q / ((2 * k) * (2 * k - 1) * w ** (2 * k - 1))
    g = mp.exp(lg)
    for j in range(_SHIFT):
        g /= z + j
    return g


def hp_erf(x):
    """erf(x) via the alternating Taylor series (fine for |x| <= 5 at 60 digits)."""
    x = mpf(x)
    total = mpf(0)
    term = x
    k = 0
    while abs(term) > mpf(10) ** (-55):
        total += term / (2 * k + 1)
        k += 1
        term *= -x * x / k
    return 2 / mp.sqrt(mp.pi) * total


def hp_mittag_leffler(alpha, y):
    """E_alpha(y) = sum_k y^k / Gamma(1 + alpha k), summed in high precision."""
    alpha = mpf(alpha)
    y = mpf(y)
    total = mpf(0)
    ypow = mpf(1)
    for k in range(2000):
        term = ypow / hp_gamma(1 + alpha * k)
        total += term
        if k > 4 and abs(term) < mpf(10) ** (-50) * max(abs(total), mpf(1)):
            return total
        ypow *= y
    raise RuntimeError("high-precision Mittag-Leffler series did not converge")


def pwc_linear_benchmark(alpha, c, x0, dt, n_steps):
    """Scalar piecewise-constant recurrence for dx^alpha/dt^alpha = -c x."""
    alpha = mpf(alpha)
    c = mpf(c)
    dt = mpf(dt)
    gam = hp_gamma(1 + alpha)
    states = [mpf(x0)]
    fvals = [-c * states[0]]
    for n in range(1, n_steps + 1):
        tn = n * dt
        acc = mpf(x0) + tn ** alpha / gam * fvals[0]
        for m in range(1, n):
            acc += (tn - m * dt) ** alpha / gam * (fvals[m] - fvals[m - 1])
        states.append(acc)
        fvals.append(-c * acc)
    return states


def main():
    golden_dir = pathlib.Path(__file__).resolve().parent.parent / "tests" / "golden"
    golden_dir.mkdir(parents=True, exist_ok=True)

    # sanity: the shifted-Stirling gamma must agree with mpmath's own gamma
    for z in (0.3, 0.5, 1.0, 1.5, 1.8, 2.0):
        assert abs(hp_gamma(z) - mp.gamma(z)) < mpf(10) ** (-40), z
    assert abs(hp_erf(1) - mp.erf(1)) < mpf(10) ** (-50)

    special = {
        "gamma_1_8": float(hp_gamma(mpf("1.8"))),
        "gamma_1_5": float(hp_gamma(mpf("1.5"))),
        # E_{1/2}(-1) = e * erfc(1)
        "ml_half_minus_one": float(mp.e * (1 - hp_erf(1))),
    }

    alpha, c, x0, dt, n_steps = mpf("0.5"), mpf(1), mpf(1), mpf("0.25"), 12
    states = pwc_linear_benchmark(alpha, c, x0, dt, n_steps)
    exact = [x0 * hp_mittag_leffler(alpha, -c * (n * dt) ** alpha)
             for n in range(n_steps + 1)]
    residuals = [s - e for s, e in zip(states, exact)]
    benchmark = {
        "alpha": 0.5,
        "c": 1.0,
        "x0": 1.0,
        "dt": 0.25,
        "n_steps": 12,
        "pwc_uniform_states": [float(s) for s in states],
        "exact_values": [float(e) for e in exact],
        "residuals": [float(r) for r in residuals],
        "max_abs_residual": float(max(abs(r) for r in residuals)),
    }

    with open(golden_dir / "special_values.json", "w") as fh:
        json.dump(special, fh, indent=2)
        fh.write("\n")
    with open(golden_dir / "linear_benchmark.json", "w") as fh:
        json.dump(benchmark, fh, indent=2)
        fh.write("\n")
    print("wrote", golden_dir / "special_values.json")
    print("wrote", golden_dir / "linear_benchmark.json")


if __name__ == "__main__":
    main()
