"""End-to-end acceptance checks for identification, fixed points, control and the CLI."""

import time

import numpy as np
import pytest
from click.testing import CliRunner
from conftest import (
    brute_force_minimum,
    log_fixed_point,
    random_control_problem,
    random_stable_model,
    rotation_model,
    spectral_radius,
)

from llds.cli.main import cli
from llds.control import ControlProblem, reduce_problem, solve_control
from llds.core import LogLinearModel, Trajectory
from llds.io import load_hare_lynx, write_model_file
from llds.simulate import NoiseSpec, fixed_point, simulate, step
from llds.sysid import identify, match_window, window_errors


@pytest.fixture
def stable_models(rng):
    """50 stable models cycling n = 1, 2, 3 with generic starting points."""
    cases = []
    for k in range(50):
        model = random_stable_model(rng, k % 3 + 1)
        x1 = np.exp(log_fixed_point(model) + rng.standard_normal(model.n))
        cases.append((model, x1))
    return cases


def test_exact_identification(stable_models):
    started = time.perf_counter()
    for model, x1 in stable_models:
        assert spectral_radius(model.A) <= 0.9
        result = identify(simulate(model, x1, 30))
        assert np.max(np.abs(result.model.A - model.A)) <= 1e-8
        assert np.max(np.abs(result.model.log_c - model.log_c)) <= 1e-8
    assert time.perf_counter() - started < 1.0


def test_noisy_consistency(rng):
    A_ok = sigma_ok = 0
    for seed in range(10):
        model = rotation_model(rng)
        direction = rng.standard_normal(2)
        x1 = np.exp(log_fixed_point(model) + 5.0 * direction / np.linalg.norm(direction))
        x = simulate(model, x1, 200, noise=NoiseSpec(sigma=0.05, seed=seed))
        result = identify(x)
        A_ok += np.max(np.abs(result.model.A - model.A)) <= 0.05
        sigma_ok += 0.04 <= result.sigma_hat <= 0.06
    assert A_ok >= 9
    assert sigma_ok >= 9


REPORTED_A = np.array([[0.74, -0.37], [0.21, 0.70]])
REPORTED_C = np.array([2.0, 0.23])


def test_hare_lynx_sign_pattern(record_property):
    series = load_hare_lynx()
    result = identify(Trajectory(states=series.values))
    A, c = result.model.A, result.model.c

    # Hares breed hares, lynxes eat hares, both feed lynxes.
    np.testing.assert_array_equal(np.sign(A), [[1, -1], [1, 1]])

    a_error, c_error = window_errors(result, REPORTED_A, REPORTED_C)
    record_property("fitted_A", A.round(3).tolist())
    record_property("fitted_c", c.round(3).tolist())
    record_property("matches_reported_coefficients", bool(a_error <= 0.08 and c_error <= 0.15))


def test_hare_lynx_best_window(record_property):
    series = load_hare_lynx()
    full = identify(Trajectory(states=series.values))
    match = match_window(Trajectory(states=series.values), REPORTED_A, REPORTED_C, start=series.start)

    assert series.start <= match.first and match.last <= series.start + len(series.values) - 1
    assert match.length >= 5
    full_a, full_c = window_errors(full, REPORTED_A, REPORTED_C)
    assert match.score <= max(full_a / 0.08, full_c / 0.15) + 1e-6

    record_property("best_window", f"{match.first}-{match.last}")
    record_property("best_window_a_error", round(match.a_error, 3))
    record_property("best_window_c_error", round(match.c_error, 3))


def test_fixed_point_consistency(stable_models):
    for model, x1 in stable_models:
        x_star = fixed_point(model)
        np.testing.assert_allclose(step(model, x_star), x_star, rtol=1e-9)
        x = simulate(model, x1, 500)
        assert np.max(np.abs(np.log(x.states[-1]) - np.log(x_star))) <= 1e-6


def test_control_optimality(rng):
    for k in range(20):
        n, m, horizon = k % 2 + 1, (k // 2) % 2 + 1, k % 3 + 1
        problem = random_control_problem(rng, n, m, horizon)
        solution = solve_control(problem)
        assert solution.objective <= brute_force_minimum(problem, solution.log_inputs, rng) + 1e-12

        gradient_at_zero = np.max(np.abs(reduce_problem(problem).g))
        assert solution.kkt_residual <= 1e-8 * (1.0 + gradient_at_zero)

    scalar = ControlProblem.build(
        LogLinearModel(A=[[0.0]], c=[1.0], B=[[1.0]]), x1_hat=[0.0], refs=[[1.0]]
    )
    solution = solve_control(scalar)
    assert solution.log_inputs[0, 0] == pytest.approx(0.5, abs=1e-9)
    assert solution.objective == pytest.approx(0.5, abs=1e-9)


def test_log_space_equivalence(rng):
    for _ in range(1000):
        n = int(rng.integers(1, 4))
        m = int(rng.integers(0, 3))
        model = LogLinearModel(
            A=0.5 * rng.standard_normal((n, n)),
            c=np.exp(rng.standard_normal(n)),
            B=rng.standard_normal((n, m)) if m else None,
        )
        x_hat = rng.standard_normal(n)
        u_hat = rng.standard_normal(m) if m else None
        z_hat = 0.1 * rng.standard_normal(n)

        nxt = step(model, np.exp(x_hat), None if u_hat is None else np.exp(u_hat), z_hat)
        expected = model.A @ x_hat + model.log_c + z_hat
        if m:
            expected += model.B @ u_hat
        np.testing.assert_allclose(np.log(nxt), expected, rtol=0, atol=1e-10)


def _run_pipeline(workdir, model_path):
    runner = CliRunner()
    workdir.mkdir()
    commands = [
        ["simulate", "--model", model_path, "--x1", "30,4", "--steps", "80",
         "--sigma", "0.05", "--seed", "7", "--out", workdir / "series.csv"],
        ["fit", "--series", workdir / "series.csv", "--out", workdir / "fitted.yaml",
         "--residuals", workdir / "residuals.csv"],
        ["predict", "--model", workdir / "fitted.yaml", "--series", workdir / "series.csv",
         "--out", workdir / "prediction.csv", "--plot", workdir / "prediction.svg"],
    ]
    for args in commands:
        result = runner.invoke(cli, [str(a) for a in args], catch_exceptions=False)
        assert result.exit_code == 0, result.output
    return {path.name: path.read_bytes() for path in sorted(workdir.iterdir())}


def test_pipeline_determinism(tmp_path):
    model_path = tmp_path / "model.yaml"
    write_model_file(model_path, LogLinearModel(A=[[0.74, -0.37], [0.21, 0.70]], c=[2.0, 0.23]))

    first = _run_pipeline(tmp_path / "first", model_path)
    second = _run_pipeline(tmp_path / "second", model_path)
    assert set(first) == {
        "series.csv", "fitted.yaml", "residuals.csv", "prediction.csv", "prediction.svg"
    }
    assert first == second
