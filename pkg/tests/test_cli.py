"""CLI: config handling, table output, figure data, exit codes."""

import csv
import json
import math

import numpy as np
import pytest

from fdeint import linear_problem, solve_pwc, uniform_grid
from fdeint.cli import (
    EXIT_CONFIG,
    EXIT_IO,
    EXIT_OK,
    EXIT_SOLVER,
    ConfigError,
    RunConfig,
    build_config,
    format_config,
    main,
    parse_config_text,
    run_figure,
    run_solve,
)

FIG2_CSVS = {
    "fig2_gl.csv",
    "fig2_pwc_uniform.csv",
    "fig2_pwc_random.csv",
    "fig2_pwc_ramp.csv",
    "fig2_residual_gl.csv",
    "fig2_residual_pwc_uniform.csv",
    "fig2_residual_pwc_random.csv",
    "fig2_residual_pwc_ramp.csv",
    "fig2_exact.csv",
}


def _read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


# ------------------------------------------------------------------ config

def test_defaults_build_the_linear_benchmark():
    config = build_config({})
    assert config.problem == "linear"
    assert config.alpha == 0.5
    assert config.c == 1.0
    assert config.x0 == 1.0
    assert config.dt == 0.25
    assert config.n_steps == 12
    assert config.format == "csv"
    assert config.output == "-"


@pytest.mark.parametrize("raw", [
    {},
    {"problem": "riccati", "alpha": "0.8", "rho": "1", "x0": "0.5"},
    {"grid": "random", "seed": "7", "dt": "0.2", "n_steps": "20"},
    {"scheme": "gl", "format": "json", "output": "out.json"},
    {"scheme": "el-sayed", "dt": "0.015625"},
])
def test_config_round_trip(raw):
    config = build_config(raw)
    assert parse_config_text(format_config(config)) == config


def test_config_text_parsing_features():
    text = """
    # a comment
    problem = linear
    alpha = 0.25   # trailing comment
    c = 2
    """
    config = parse_config_text(text)
    assert config.alpha == 0.25
    assert config.c == 2.0


@pytest.mark.parametrize("raw,needle", [
    ({"alpha": "1.5"}, "0 < alpha <= 1"),
    ({"alpha": "0"}, "0 < alpha <= 1"),
    ({"alpha": "abc"}, "alpha"),
    ({"problem": "pendulum"}, "problem"),
    ({"grid": "random"}, "seed"),
    ({"seed": "3"}, "seed"),
    ({"problem": "linear", "rho": "1"}, "rho"),
    ({"problem": "riccati", "c": "1"}, "c"),
    ({"scheme": "gl", "grid": "ramp"}, "uniform"),
    ({"dt": "-0.5"}, "dt"),
    ({"n_steps": "0"}, "n_steps"),
    ({"format": "xml"}, "format"),
    ({"banana": "1"}, "banana"),
])
def test_config_validation_errors(raw, needle):
    with pytest.raises(ConfigError) as excinfo:
        build_config(raw)
    assert needle in str(excinfo.value)


def test_config_parser_rejects_bad_lines():
    with pytest.raises(ConfigError):
        parse_config_text("alpha 0.5")
    with pytest.raises(ConfigError):
        parse_config_text("alpha = 0.5\nalpha = 0.6")


# ------------------------------------------------------------------- solve

def test_run_solve_linear_rows():
    columns, rows = run_solve(build_config({}))
    assert columns == ["index", "time", "x", "residual"]
    assert len(rows) == 13
    first = rows[0]
    assert (first["index"], first["time"], first["x"], first["residual"]) == (0, 0.0, 1.0, 0.0)


def test_run_solve_riccati_has_no_residual_column():
    columns, rows = run_solve(build_config(
        {"problem": "riccati", "alpha": "0.8", "rho": "1", "x0": "0.5"}))
    assert columns == ["index", "time", "x"]
    assert len(rows) == 13


def test_solve_stdout_csv_round_trips(capsys):
    assert main(["solve"]) == EXIT_OK
    out = capsys.readouterr().out
    lines = out.strip().split("\n")
    assert lines[0] == "index,time,x,residual"
    assert len(lines) == 14
    # 17-significant-digit rendering round-trips exactly
    traj = solve_pwc(linear_problem(0.5, 1.0, 1.0), uniform_grid(0.25, 12))
    parsed = [float(line.split(",")[2]) for line in lines[1:]]
    assert parsed == list(traj.states[:, 0])


def test_solve_json_output(tmp_path, capsys):
    out_file = tmp_path / "run.json"
    code = main(["solve", "--format", "json", "--output", str(out_file)])
    assert code == EXIT_OK
    rows = json.loads(out_file.read_text())
    assert len(rows) == 13
    assert rows[0] == {"index": 0, "time": 0.0, "x": 1.0, "residual": 0.0}


def test_solve_reads_config_file_and_flags_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("problem = linear\nalpha = 0.5\nc = 1\nn_steps = 4\n")
    assert main(["solve", "--config", str(cfg), "--n-steps", "6"]) == EXIT_OK
    out = capsys.readouterr().out
    assert len(out.strip().split("\n")) == 8  # header + 7 points


def test_solve_t_end_derives_step_count(capsys):
    assert main(["solve", "--dt", "0.25", "--t-end", "3.0"]) == EXIT_OK
    out = capsys.readouterr().out
    assert len(out.strip().split("\n")) == 14


def test_solve_identical_configs_are_byte_identical(tmp_path):
    args = ["solve", "--grid", "random", "--seed", "9", "--dt", "0.2",
            "--n-steps", "15"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["--output", str(a)]) == EXIT_OK
    assert main(args + ["--output", str(b)]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()


def test_malformed_alpha_exits_with_config_error(capsys):
    assert main(["solve", "--alpha", "1.5"]) == EXIT_CONFIG
    err = capsys.readouterr().err
    assert "0 < alpha <= 1" in err


def test_unknown_flag_exits_with_config_error(capsys):
    assert main(["solve", "--no-such-flag"]) == EXIT_CONFIG


@pytest.mark.filterwarnings("ignore:overflow:RuntimeWarning")
def test_solver_blowup_exits_with_solver_error(capsys):
    code = main(["solve", "--problem", "riccati", "--alpha", "0.8",
                 "--rho", "-1", "--x0", "2", "--dt", "2.0", "--n-steps", "60"])
    assert code == EXIT_SOLVER
    assert "non-finite" in capsys.readouterr().err


def test_unwritable_output_exits_with_io_error(tmp_path, capsys):
    target = tmp_path / "missing" / "out.csv"
    assert main(["solve", "--output", str(target)]) == EXIT_IO


# ------------------------------------------------------------------ figure

def test_fig2_emits_documented_file_set(tmp_path):
    written = run_figure("fig2", tmp_path, render=False)
    assert {p.name for p in written} == FIG2_CSVS
    assert {p.name for p in tmp_path.iterdir()} == FIG2_CSVS


def test_fig2_is_byte_identical_across_runs(tmp_path):
    run_figure("fig2", tmp_path / "a", render=False)
    run_figure("fig2", tmp_path / "b", render=False)
    for name in sorted(FIG2_CSVS):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_fig2_exact_curve_starts_at_one(tmp_path):
    run_figure("fig2", tmp_path, render=False)
    rows = _read_csv(tmp_path / "fig2_exact.csv")
    assert rows[0] == ["time", "x"]
    assert len(rows) == 302
    assert float(rows[1][0]) == 0.0
    assert float(rows[1][1]) == 1.0


def test_fig2_pwc_uniform_matches_golden(tmp_path, golden_benchmark):
    run_figure("fig2", tmp_path, render=False)
    rows = _read_csv(tmp_path / "fig2_residual_pwc_uniform.csv")
    assert rows[0] == ["index", "time", "residual"]
    res = [float(r[2]) for r in rows[1:]]
    assert np.allclose(res, golden_benchmark["residuals"], rtol=0.0, atol=1e-12)
    assert max(abs(v) for v in res) == pytest.approx(
        golden_benchmark["max_abs_residual"], abs=1e-12)
    states = [float(r[2]) for r in _read_csv(tmp_path / "fig2_pwc_uniform.csv")[1:]]
    assert np.allclose(states, golden_benchmark["pwc_uniform_states"],
                       rtol=0.0, atol=1e-12)


def test_fig2_renders_png_by_default(tmp_path):
    assert main(["figure", "fig2", "--out-dir", str(tmp_path)]) == EXIT_OK
    png = tmp_path / "fig2.png"
    assert png.exists() and png.stat().st_size > 0
    assert {p.name for p in tmp_path.iterdir()} == FIG2_CSVS | {"fig2.png"}


def test_fig1_default_and_fine_file_sets(tmp_path):
    base = {"fig1_el_sayed_dt0.1.csv", "fig1_pwc_dt0.1.csv",
            "fig1_el_sayed_dt0.01.csv", "fig1_pwc_dt0.01.csv"}
    written = run_figure("fig1", tmp_path / "a", render=False)
    assert {p.name for p in written} == base
    fine = run_figure("fig1", tmp_path / "b", include_finest=True, render=False)
    assert {p.name for p in fine} == base | {
        "fig1_el_sayed_dt0.001.csv", "fig1_pwc_dt0.001.csv"}


def test_fig1_row_counts_and_header(tmp_path):
    run_figure("fig1", tmp_path, render=False)
    rows = _read_csv(tmp_path / "fig1_pwc_dt0.1.csv")
    assert rows[0] == ["index", "time", "x"]
    assert len(rows) == 52  # header + 51 grid points on [0, 5]
    assert float(rows[1][2]) == 0.5


# -------------------------------------------------------------- convergence

def test_convergence_csv_output(capsys):
    code = main(["convergence", "--problem", "linear", "--alpha", "0.5",
                 "--c", "1", "--x0", "1", "--t-end", "3",
                 "--dts", "0.25,0.125,0.0625,0.03125"])
    assert code == EXIT_OK
    lines = capsys.readouterr().out.strip().split("\n")
    assert lines[0] == "dt,max_abs_error,observed_ratio"
    assert len(lines) == 5
    errs = [float(line.split(",")[1]) for line in lines[1:]]
    assert all(b < a for a, b in zip(errs, errs[1:]))
    assert lines[1].endswith(",")  # first row has no ratio


def test_convergence_single_dt_has_empty_ratio(capsys):
    assert main(["convergence", "--dts", "0.25"]) == EXIT_OK
    lines = capsys.readouterr().out.strip().split("\n")
    assert len(lines) == 2
    assert lines[1].split(",")[2] == ""


def test_convergence_el_sayed_documents_stalled_error(capsys):
    code = main(["convergence", "--scheme", "el-sayed",
                 "--dts", "0.25,0.05,0.01,0.001"])
    assert code == EXIT_OK
    lines = capsys.readouterr().out.strip().split("\n")
    errs = [float(line.split(",")[1]) for line in lines[1:]]
    assert errs[-1] > 0.1
    assert errs[-1] > 0.5 * errs[0]


def test_convergence_plot_written(tmp_path, capsys):
    png = tmp_path / "conv.png"
    code = main(["convergence", "--dts", "0.25,0.125", "--output",
                 str(tmp_path / "conv.csv"), "--plot", str(png)])
    assert code == EXIT_OK
    assert png.exists() and png.stat().st_size > 0


def test_convergence_rejects_bad_dts(capsys):
    assert main(["convergence", "--dts", "0.1,oops"]) == EXIT_CONFIG
    assert main(["convergence", "--dts", "0.1,0.2"]) == EXIT_CONFIG
