"""Residual reports and convergence studies."""

import numpy as np
import pytest

from fdeint import (
    ReferenceKind,
    ReferenceSolution,
    SchemeKind,
    convergence_study,
    exact_linear,
    linear_problem,
    ramp_grid,
    random_grid,
    residuals,
    solve_el_sayed,
    solve_gl,
    solve_pwc,
    uniform_grid,
)

BENCH = dict(alpha=0.5, c=1.0, x0=1.0)


def _bench_problem():
    return linear_problem(**BENCH)


def _bench_exact():
    return exact_linear(**BENCH)


def _self_reference(traj):
    times = traj.grid.times

    def evaluate(t):
        return np.array([np.interp(t, times, traj.states[:, j])
                         for j in range(traj.states.shape[1])])

    return ReferenceSolution(kind=ReferenceKind.FINE_GRID, evaluate=evaluate)


def test_residuals_against_self_are_zero():
    traj = solve_pwc(_bench_problem(), uniform_grid(0.25, 12))
    report = residuals(traj, _self_reference(traj))
    assert np.all(report.residuals == 0.0)
    assert report.max_abs == 0.0
    assert report.at_first_quarter_max == 0.0


def test_residual_report_summary_fields():
    traj = solve_pwc(_bench_problem(), uniform_grid(0.25, 12))
    report = residuals(traj, _bench_exact())
    assert report.residuals.shape == (13, 1)
    assert report.grid_times.size == 13
    mags = np.max(np.abs(report.residuals), axis=1)
    assert report.max_abs == np.max(mags)
    assert report.at_first_quarter_max == np.max(mags[report.grid_times <= 0.75])


def test_benchmark_residuals_match_independent_golden(golden_benchmark):
    traj = solve_pwc(_bench_problem(), uniform_grid(0.25, 12))
    report = residuals(traj, _bench_exact())
    assert np.allclose(report.residuals[:, 0], golden_benchmark["residuals"],
                       rtol=0.0, atol=1e-12)
    assert report.max_abs == pytest.approx(
        golden_benchmark["max_abs_residual"], abs=1e-12)


def test_el_sayed_residual_exceeds_pwc_on_benchmark():
    grid = uniform_grid(0.25, 12)
    pwc = residuals(solve_pwc(_bench_problem(), grid), _bench_exact())
    es = residuals(solve_el_sayed(_bench_problem(), grid), _bench_exact())
    assert es.max_abs > pwc.max_abs


def test_convergence_study_pwc_strictly_decreasing():
    table = convergence_study(_bench_problem(), _bench_exact(), 3.0,
                              [0.25, 0.125, 0.0625, 0.03125])
    errs = [row.max_abs_error for row in table.rows]
    assert all(b < a for a, b in zip(errs, errs[1:]))
    assert table.rows[0].observed_ratio is None
    for prev, row in zip(table.rows, table.rows[1:]):
        assert row.observed_ratio == pytest.approx(
            prev.max_abs_error / row.max_abs_error, rel=1e-12)
        assert row.dt < prev.dt


def test_convergence_study_order_one_ratios_near_two():
    table = convergence_study(linear_problem(1.0, 1.0, 1.0),
                              exact_linear(1.0, 1.0, 1.0), 3.0,
                              [0.25, 0.125, 0.0625, 0.03125])
    for row in table.rows[1:]:
        assert 1.8 < row.observed_ratio < 2.2


def test_el_sayed_error_stays_bounded_away_from_zero():
    pwc = convergence_study(_bench_problem(), _bench_exact(), 3.0,
                            [0.25, 0.05, 0.01, 0.001])
    es = convergence_study(_bench_problem(), _bench_exact(), 3.0,
                           [0.25, 0.05, 0.01, 0.001],
                           scheme=SchemeKind.EL_SAYED)
    pwc_gain = pwc.rows[0].max_abs_error / pwc.rows[-1].max_abs_error
    es_gain = es.rows[0].max_abs_error / es.rows[-1].max_abs_error
    assert es.rows[-1].max_abs_error > 0.1
    assert es_gain < pwc_gain / 5.0


def test_convergence_study_validation():
    with pytest.raises(ValueError):
        convergence_study(_bench_problem(), _bench_exact(), 3.0, [])
    with pytest.raises(ValueError):
        convergence_study(_bench_problem(), _bench_exact(), 3.0, [0.1, 0.1])
    with pytest.raises(ValueError):
        convergence_study(_bench_problem(), _bench_exact(), 3.0, [0.1, 0.2])
    with pytest.raises(ValueError):
        convergence_study(_bench_problem(), _bench_exact(), 3.0, [0.1, -0.05])


def test_ramp_grid_improves_early_interval_residuals():
    exact = _bench_exact()
    uniform = residuals(solve_pwc(_bench_problem(), uniform_grid(0.25, 12)), exact)
    ramp = residuals(solve_pwc(_bench_problem(), ramp_grid(0.25, 12)), exact)
    assert ramp.at_first_quarter_max < uniform.at_first_quarter_max


def test_random_grids_stay_within_factor_five_of_uniform():
    exact = _bench_exact()
    uniform = residuals(solve_pwc(_bench_problem(), uniform_grid(0.25, 12)), exact)
    for seed in range(10):
        grid = random_grid(0.25, 12, seed=seed)
        report = residuals(solve_pwc(_bench_problem(), grid), exact)
        assert report.max_abs < 5.0 * uniform.max_abs


def test_gl_and_pwc_have_comparable_benchmark_accuracy():
    grid = uniform_grid(0.25, 12)
    pwc = residuals(solve_pwc(_bench_problem(), grid), _bench_exact())
    gl = residuals(solve_gl(_bench_problem(), grid), _bench_exact())
    ratio = max(pwc.max_abs / gl.max_abs, gl.max_abs / pwc.max_abs)
    assert ratio < 3.0
