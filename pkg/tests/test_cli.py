"""Tests for the llds command line interface."""

import numpy as np
import pytest
from click.testing import CliRunner

from llds.cli.main import cli
from llds.core import LogLinearModel
from llds.io import HARE_LYNX_PATH, load_series_file, read_model_file, write_model_file


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def oscillator(tmp_path):
    path = tmp_path / "model.yaml"
    model = LogLinearModel(A=[[0.74, -0.37], [0.21, 0.70]], c=[2.0, 0.23])
    write_model_file(path, model)
    return path


def _invoke(runner, *args):
    return runner.invoke(cli, [str(a) for a in args], catch_exceptions=False)


def test_version(runner):
    result = _invoke(runner, "--version")
    assert result.exit_code == 0
    assert result.output.startswith("v")


def test_fixed_point_prints_components(runner, tmp_path):
    write_model_file(tmp_path / "m.yaml", LogLinearModel(A=np.zeros((2, 2)), c=[3.0, 5.0]))
    result = _invoke(runner, "fixed-point", "--model", tmp_path / "m.yaml")
    assert result.exit_code == 0
    assert result.output.splitlines() == ["3", "5"]


def test_fixed_point_of_controlled_model(runner, tmp_path):
    write_model_file(tmp_path / "m.yaml", LogLinearModel(A=[[0.5]], c=[2.0], B=[[1.0]]))
    result = _invoke(runner, "fixed-point", "--model", tmp_path / "m.yaml", "--input", "3")
    assert result.exit_code == 0
    assert float(result.output.strip()) == pytest.approx(36.0, rel=1e-13)


@pytest.mark.parametrize(
    "model, code",
    [
        (LogLinearModel(A=np.eye(2), c=[1.0, 2.0]), "singular-matrix"),
        (LogLinearModel(A=[[0.5]], c=[2.0], B=[[1.0]]), "missing-control"),
    ],
)
def test_errors_become_one_line_diagnostics(runner, tmp_path, model, code):
    write_model_file(tmp_path / "m.yaml", model)
    result = _invoke(runner, "fixed-point", "--model", tmp_path / "m.yaml")
    assert result.exit_code == 1
    diagnostics = [line for line in result.output.splitlines() if line.startswith("error[")]
    assert len(diagnostics) == 1
    assert diagnostics[0].startswith(f"error[{code}]: ")


def test_missing_model_file(runner, tmp_path):
    result = _invoke(
        runner, "simulate", "--model", tmp_path / "none.yaml", "--x1", "1", "--steps", "3",
        "--out", tmp_path / "x.csv",
    )
    assert result.exit_code == 1
    assert "error[io-error]" in result.output
    assert not (tmp_path / "x.csv").exists()


def test_overflow_writes_nothing(runner, tmp_path):
    write_model_file(tmp_path / "m.yaml", LogLinearModel(A=[[2.0]], c=[np.e]))
    result = _invoke(
        runner, "simulate", "--model", tmp_path / "m.yaml", "--x1", "1", "--steps", "20",
        "--out", tmp_path / "x.csv",
    )
    assert result.exit_code == 1
    assert "error[overflow]" in result.output
    assert not (tmp_path / "x.csv").exists()


def test_simulate_writes_initial_state_exactly(runner, tmp_path, oscillator):
    result = _invoke(
        runner, "simulate", "--model", oscillator, "--x1", "30,4", "--steps", "5",
        "--out", tmp_path / "x.csv",
    )
    assert result.exit_code == 0
    assert (tmp_path / "x.csv").read_bytes().startswith(b"t,x1,x2\n1,30,4\n")


def test_simulate_seed_changes_output(runner, tmp_path, oscillator):
    for seed in ("7", "8"):
        _invoke(
            runner, "simulate", "--model", oscillator, "--x1", "30,4", "--steps", "10",
            "--sigma", "0.1", "--seed", seed, "--out", tmp_path / f"{seed}.csv",
        )
    assert (tmp_path / "7.csv").read_bytes() != (tmp_path / "8.csv").read_bytes()


def _pipeline(runner, workdir, oscillator):
    workdir.mkdir()
    series = workdir / "series.csv"
    model = workdir / "fitted.yaml"
    _invoke(
        runner, "simulate", "--model", oscillator, "--x1", "30,4", "--steps", "60",
        "--sigma", "0.05", "--seed", "3", "--out", series,
    )
    fit = _invoke(
        runner, "fit", "--series", series, "--out", model, "--residuals", workdir / "res.csv"
    )
    assert fit.exit_code == 0
    predict = _invoke(
        runner, "predict", "--model", model, "--series", series, "--out", workdir / "pred.csv",
        "--plot", workdir / "pred.svg",
    )
    assert predict.exit_code == 0
    return fit, predict


def test_fit_predict_outputs(runner, tmp_path, oscillator):
    fit, predict = _pipeline(runner, tmp_path / "first", oscillator)

    assert "A =" in fit.output and "c =" in fit.output
    assert "sigma_hat =" in fit.output
    assert "log RMSE =" in predict.output

    fitted = read_model_file(tmp_path / "first" / "fitted.yaml")
    assert fitted.sigma_hat > 0
    np.testing.assert_allclose(fitted.model.A, [[0.74, -0.37], [0.21, 0.70]], atol=0.15)

    residuals = load_series_file(tmp_path / "first" / "res.csv", require_positive=False)
    assert residuals.columns == ("r_x1", "r_x2")
    assert residuals.start == 2

    prediction = load_series_file(tmp_path / "first" / "pred.csv")
    assert prediction.columns == ("x1", "x1_pred", "x2", "x2_pred")
    assert (tmp_path / "first" / "pred.svg").read_text().count("<polyline") == 4


def test_free_run_prediction(runner, tmp_path, oscillator):
    _invoke(
        runner, "simulate", "--model", oscillator, "--x1", "30,4", "--steps", "15",
        "--out", tmp_path / "x.csv",
    )
    result = _invoke(
        runner, "predict", "--model", oscillator, "--series", tmp_path / "x.csv",
        "--out", tmp_path / "p.csv", "--free-run",
    )
    assert result.exit_code == 0
    values = load_series_file(tmp_path / "p.csv").values
    np.testing.assert_allclose(values[:, 1::2], values[:, 0::2], rtol=1e-12)


def test_controlled_fit_and_control(runner, tmp_path):
    model = LogLinearModel(A=[[0.6, -0.2], [0.3, 0.5]], c=[2.0, 1.5], B=[[1.0, 0.0], [0.2, 0.8]])
    write_model_file(tmp_path / "true.yaml", model)
    rng = np.random.default_rng(5)
    inputs = np.exp(0.5 * rng.standard_normal((29, 2)))
    lines = ["t,u1,u2"] + [f"{t + 1},{float(a)!r},{float(b)!r}" for t, (a, b) in enumerate(inputs)]
    (tmp_path / "u.csv").write_text("\n".join(lines) + "\n")

    assert _invoke(
        runner, "simulate", "--model", tmp_path / "true.yaml", "--x1", "3,2", "--steps", "30",
        "--inputs", tmp_path / "u.csv", "--out", tmp_path / "x.csv",
    ).exit_code == 0
    assert _invoke(
        runner, "fit", "--series", tmp_path / "x.csv", "--inputs", tmp_path / "u.csv",
        "--out", tmp_path / "fitted.yaml",
    ).exit_code == 0
    fitted = read_model_file(tmp_path / "fitted.yaml").model
    np.testing.assert_allclose(fitted.B, model.B, atol=1e-8)

    result = _invoke(
        runner, "control", "--model", tmp_path / "fitted.yaml",
        "--problem", "config/problems/hare_lynx_tracking.yaml",
        "--out", tmp_path / "inputs.csv", "--states", tmp_path / "states.csv",
    )
    assert result.exit_code == 0
    assert "objective =" in result.output

    inputs = load_series_file(tmp_path / "inputs.csv")
    assert inputs.columns == ("u1", "u2")
    assert inputs.values.shape == (4, 2)
    assert np.all(np.abs(np.log(inputs.values)) <= 0.5 + 1e-12)
    states = load_series_file(tmp_path / "states.csv")
    assert states.start == 2 and states.values.shape == (4, 2)


def test_control_requires_inputs(runner, oscillator):
    result = _invoke(
        runner, "control", "--model", oscillator,
        "--problem", "config/problems/hare_lynx_tracking.yaml", "--out", "unused.csv",
    )
    assert result.exit_code == 1
    assert "error[dimension-mismatch]" in result.output


def test_bad_config_file(runner, tmp_path, oscillator):
    (tmp_path / "bad.yaml").write_text("simulation:\n  seed: 3\n")
    result = _invoke(runner, "--config", tmp_path / "bad.yaml", "fixed-point", "--model", oscillator)
    assert result.exit_code == 1
    assert "error[config-error]" in result.output


def test_control_overflow_leaves_no_files(runner, tmp_path):
    write_model_file(tmp_path / "m.yaml", LogLinearModel(A=[[0.5]], c=[1.0], B=[[1.0]]))
    (tmp_path / "problem.yaml").write_text(
        "horizon: 1\ninitial_state: [1.0]\nlog_references: [[1000.0]]\ninput_weight: 1.0e-6\n"
    )
    result = _invoke(
        runner, "control", "--model", tmp_path / "m.yaml", "--problem", tmp_path / "problem.yaml",
        "--out", tmp_path / "u.csv", "--states", tmp_path / "x.csv",
    )
    assert result.exit_code == 1
    assert "error[overflow]" in result.output
    assert not (tmp_path / "u.csv").exists()
    assert not (tmp_path / "x.csv").exists()


@pytest.fixture
def color_terminal(monkeypatch):
    monkeypatch.setenv("FORCE_COLOR", "1")
    monkeypatch.setenv("TERM", "xterm-256color")
    monkeypatch.delenv("NO_COLOR", raising=False)
    monkeypatch.delenv("LLDS_NO_COLOR", raising=False)
    return monkeypatch


def _simulate_oscillator(runner, tmp_path, oscillator):
    return _invoke(
        runner, "simulate", "--model", oscillator, "--x1", "30,4", "--steps", "5",
        "--out", tmp_path / "x.csv",
    )


def test_status_lines_are_styled(runner, tmp_path, oscillator, color_terminal):
    result = _simulate_oscillator(runner, tmp_path, oscillator)
    assert result.exit_code == 0
    assert "\x1b[" in result.output


def test_no_color_environment(runner, tmp_path, oscillator, color_terminal):
    color_terminal.setenv("LLDS_NO_COLOR", "1")
    result = _simulate_oscillator(runner, tmp_path, oscillator)
    assert result.exit_code == 0
    assert "\x1b[" not in result.output
    assert "Trajectory written" in result.output


def test_match_window_on_bundled_data(runner, tmp_path):
    result = _invoke(
        runner, "match-window", "--series", HARE_LYNX_PATH,
        "--A", "0.74,-0.37;0.21,0.70", "--c", "2.0,0.23", "--out", tmp_path / "best.yaml",
    )
    assert result.exit_code == 0
    assert "window = 19" in result.output
    assert read_model_file(tmp_path / "best.yaml").model.n == 2


def test_match_window_rejects_ragged_matrix(runner):
    result = runner.invoke(
        cli, ["match-window", "--series", "x.csv", "--A", "1,2;3", "--c", "1,1"]
    )
    assert result.exit_code == 2
