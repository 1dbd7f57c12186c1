"""
llds CLI - simulate, identify, predict and control log-linear dynamical systems.
"""

import importlib.metadata
import logging
import sys
from functools import wraps
from pathlib import Path
from typing import Optional

import click
import numpy as np
from pydantic import ValidationError
from rich.table import Table

from llds.cli.logs import LogHandler, make_console
from llds.config_manager import LldsConfig, PathResolver
from llds.control import rollout_controlled, solve_control
from llds.core import LogLinearModel, Trajectory, check_log_range
from llds.errors import ConfigError, LldsError
from llds.io import (
    ControlProblemFile,
    free_run_predict,
    load_series_file,
    log_rmse,
    one_step_predict,
    read_model_file,
    read_series,
    render_plot,
    write_model_file,
    write_plot,
    write_series,
)
from llds.simulate import NoiseSpec, fixed_point, simulate
from llds.sysid import identify, identify_controlled, match_window

console = make_console()
err_console = make_console(stderr=True)
logger = logging.getLogger("llds")

# terminal output only; files keep 17 significant digits
DISPLAY_FORMAT = ".15g"


def configure_logging(debug: bool, rich_text: bool = True) -> LogHandler:
    global console, err_console
    # environment (LLDS_NO_COLOR) is read per invocation, not at import
    console = make_console()
    err_console = make_console(stderr=True)
    logger.handlers = []

    handler = LogHandler(rich_text=rich_text)
    handler.setFormatter(
        logging.Formatter("%(levelname)s %(name)s %(message)s", "%H:%M:%S")
        if debug
        else logging.Formatter("%(message)s", "%H:%M:%S")
    )
    logger.addHandler(handler)

    logger.setLevel(logging.DEBUG if debug else logging.INFO)
    logger.propagate = False

    return handler


def _diagnostic(code: str, message: str) -> None:
    line = " ".join(str(message).split())
    err_console.print(f"error[{code}]: {line}", markup=False, emoji=False, soft_wrap=True)


def handle_errors(f):
    """Turn llds, validation and file errors into a one-line diagnostic and exit 1."""

    @wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except LldsError as e:
            _diagnostic(e.code, str(e))
        except ValidationError as e:
            first = e.errors()[0]
            where = ".".join(str(part) for part in first.get("loc", ()))
            _diagnostic("invalid-input", f"{where}: {first.get('msg', e)}")
        except FileNotFoundError as e:
            _diagnostic("io-error", str(e))
        sys.exit(1)

    return wrapper


def _done(step: str) -> None:
    for handler in logger.handlers:
        if isinstance(handler, LogHandler):
            handler.finish(True, step)


def _parse_vector(text: str, name: str) -> np.ndarray:
    try:
        return np.array([float(part) for part in text.split(",")], dtype=np.float64)
    except ValueError as e:
        raise click.BadParameter(
            f"expected comma-separated numbers, got {text!r}", param_hint=name
        ) from e


def _parse_matrix(text: str, name: str) -> np.ndarray:
    rows = [_parse_vector(row, name) for row in text.split(";")]
    if len({len(row) for row in rows}) != 1:
        raise click.BadParameter("rows must have equal length", param_hint=name)
    return np.vstack(rows)


def _print_matrix(name: str, matrix: np.ndarray) -> None:
    table = Table(show_header=False, box=None, pad_edge=False)
    table.add_column(name, no_wrap=True)
    for _ in range(matrix.shape[1]):
        table.add_column(justify="right", no_wrap=True)
    for i, row in enumerate(matrix):
        table.add_row(f"{name} =" if i == 0 else "", *(f"{v:.4g}" for v in row))
    console.print(table)


def _print_version(ctx, param, value):
    """Click callback to print version and exit early when --version is passed."""
    if not value or ctx.resilient_parsing:
        return
    try:
        version = importlib.metadata.version("llds")
    except importlib.metadata.PackageNotFoundError:
        from llds import __version__ as version
    click.echo(f"v{version}")
    ctx.exit()


@click.group()
@click.option(
    "--version",
    is_flag=True,
    callback=_print_version,
    expose_value=False,
    is_eager=True,
    help="Show llds version and exit",
)
@click.option("--config", "-c", "config_path", help="Path to a YAML config file", default=None)
@click.option("--debug/--no-debug", default=None, help="Enable verbose debug logging")
@click.pass_context
def cli(ctx, config_path: Optional[str], debug: Optional[bool]):
    """llds - log-linear dynamical systems: simulate, fit, predict and control."""
    try:
        config = LldsConfig.from_yaml(config_path) if config_path else LldsConfig()
    except (ConfigError, FileNotFoundError) as e:
        _diagnostic(getattr(e, "code", "config-error"), str(e))
        sys.exit(1)
    if debug is not None:
        config.logging.debug = debug
    configure_logging(config.logging.debug, config.logging.rich_text)
    ctx.obj = config


@cli.command("simulate")
@click.option("--model", "model_path", required=True, type=click.Path(dir_okay=False), help="Model file")
@click.option("--x1", "x1_text", required=True, help="Initial state, comma-separated positive values")
@click.option("--steps", type=click.IntRange(min=1), required=True, help="Trajectory length T")
@click.option("--inputs", "inputs_path", default=None, help="Input series CSV (T-1 rows) for controlled models")
@click.option("--sigma", type=click.FloatRange(min=0.0), default=0.0, help="Log-space noise standard deviation")
@click.option("--seed", type=click.IntRange(min=0), default=None, help="Noise generator seed")
@click.option("--out", "out_path", required=True, help="Output series CSV")
@click.pass_obj
@handle_errors
def simulate_command(config: LldsConfig, model_path, x1_text, steps, inputs_path, sigma, seed, out_path):
    """Simulate a model and write the trajectory as CSV."""
    model = read_model_file(model_path).model
    x1 = _parse_vector(x1_text, "--x1")
    controls = read_series(inputs_path, controls=True) if inputs_path else None
    seed = config.simulation.default_seed if seed is None else seed
    noise = NoiseSpec(sigma=sigma, seed=seed) if sigma > 0 else None

    logger.info(f"🚀 Simulating {steps} steps (sigma={sigma:g}, seed={seed})")
    trajectory = simulate(model, x1, steps, controls=controls, noise=noise, config=config.simulation)
    write_series(out_path, trajectory)
    _done(f"Trajectory written to {out_path}")


@cli.command("fit")
@click.option("--series", "series_path", required=True, help="Measured series CSV")
@click.option("--inputs", "inputs_path", default=None, help="Input series CSV (T-1 rows)")
@click.option("--out", "out_path", required=True, help="Output model file")
@click.option("--residuals", "residuals_path", default=None, help="Output CSV of log-space residuals")
@click.pass_obj
@handle_errors
def fit_command(config: LldsConfig, series_path, inputs_path, out_path, residuals_path):
    """Identify A, c (and B) from a series by least squares."""
    series = load_series_file(PathResolver.resolve(series_path))
    x = Trajectory(states=series.values)
    if inputs_path:
        u = read_series(inputs_path, controls=True)
        result = identify_controlled(x, u, config.identification)
    else:
        u = None
        result = identify(x, config.identification)

    rmse = log_rmse(x, one_step_predict(result.model, x, u, config.simulation))

    write_model_file(out_path, result.model, sigma_hat=result.sigma_hat)
    if residuals_path:
        write_series(
            residuals_path,
            result.residuals,
            columns=[f"r_{name}" for name in series.columns],
            start=series.start + 1,
        )

    _print_matrix("A", result.model.A)
    if result.model.B is not None:
        _print_matrix("B", result.model.B)
    _print_matrix("c", result.model.c.reshape(-1, 1))
    console.print(f"sigma_hat = {result.sigma_hat:.6g}", markup=False)
    console.print(f"sse = {result.sse:.6g}", markup=False)
    console.print(f"one-step log RMSE = {rmse:.6g}", markup=False)
    _done(f"Model written to {out_path}")


@cli.command("predict")
@click.option("--model", "model_path", required=True, help="Model file")
@click.option("--series", "series_path", required=True, help="Measured series CSV")
@click.option("--inputs", "inputs_path", default=None, help="Input series CSV (T-1 rows)")
@click.option("--out", "out_path", required=True, help="Output CSV with paired measured/predicted columns")
@click.option("--plot", "plot_path", default=None, help="Output SVG overlay plot")
@click.option("--free-run", is_flag=True, default=False, help="Roll out from the first state instead of one step ahead")
@click.pass_obj
@handle_errors
def predict_command(config: LldsConfig, model_path, series_path, inputs_path, out_path, plot_path, free_run):
    """Predict a measured series with a model (one step ahead by default)."""
    model = read_model_file(model_path).model
    series = load_series_file(PathResolver.resolve(series_path))
    x = Trajectory(states=series.values)
    u = read_series(inputs_path, controls=True) if inputs_path else None

    predictor = free_run_predict if free_run else one_step_predict
    predicted = predictor(model, x, u, config.simulation)
    rmse = log_rmse(x, predicted)
    document = None
    if plot_path:
        document = render_plot(
            x,
            predicted,
            labels=series.columns,
            start=series.start,
            title=f"{'Free-run' if free_run else 'One-step-ahead'} prediction of {Path(series_path).name}",
            config=config.plot,
        )

    write_series(out_path, x, columns=series.columns, start=series.start, predicted=predicted)
    if document is not None:
        write_plot(plot_path, document)
    console.print(f"log RMSE = {rmse:.6g}", markup=False)


@cli.command("fixed-point")
@click.option("--model", "model_path", required=True, help="Model file")
@click.option("--input", "input_text", default=None, help="Constant input for controlled models, comma-separated")
@click.pass_obj
@handle_errors
def fixed_point_command(config: LldsConfig, model_path, input_text):
    """Print the fixed point of a model, one component per line."""
    model: LogLinearModel = read_model_file(model_path).model
    u = _parse_vector(input_text, "--input") if input_text else None
    for value in fixed_point(model, u, config.simulation):
        console.print(format(float(value), DISPLAY_FORMAT), markup=False)


@cli.command("match-window")
@click.option("--series", "series_path", required=True, help="Measured series CSV")
@click.option("--A", "a_text", required=True, help="Reference A, rows separated by ';' (e.g. '.74,-.37;.21,.70')")
@click.option("--c", "c_text", required=True, help="Reference c, comma-separated")
@click.option("--min-length", type=click.IntRange(min=3), default=None, help="Shortest window in rows")
@click.option("--out", "out_path", default=None, help="Output model file for the best window")
@click.pass_obj
@handle_errors
def match_window_command(config: LldsConfig, series_path, a_text, c_text, min_length, out_path):
    """Find the slice of a series whose fit is closest to reference coefficients."""
    A_ref = _parse_matrix(a_text, "--A")
    c_ref = _parse_vector(c_text, "--c")
    series = load_series_file(PathResolver.resolve(series_path))
    match = match_window(
        Trajectory(states=series.values),
        A_ref,
        c_ref,
        start=series.start,
        min_length=min_length,
        config=config.identification,
    )
    if out_path:
        write_model_file(out_path, match.result.model, sigma_hat=match.result.sigma_hat)

    console.print(f"window = {match.first}..{match.last}", markup=False)
    _print_matrix("A", match.result.model.A)
    _print_matrix("c", match.result.model.c.reshape(-1, 1))
    console.print(f"A error = {match.a_error:.4g}", markup=False)
    console.print(f"c relative error = {match.c_error:.4g}", markup=False)


@cli.command("control")
@click.option("--model", "model_path", required=True, help="Controlled model file (m >= 1)")
@click.option("--problem", "problem_path", required=True, help="Control problem YAML")
@click.option("--out", "out_path", required=True, help="Output CSV of optimal inputs u_1..u_T")
@click.option("--states", "states_path", default=None, help="Output CSV of predicted states x_2..x_{T+1}")
@click.pass_obj
@handle_errors
def control_command(config: LldsConfig, model_path, problem_path, out_path, states_path):
    """Solve a finite-horizon tracking problem for the optimal inputs."""
    model = read_model_file(model_path).model
    problem = ControlProblemFile.from_yaml(problem_path).to_problem(model)
    logger.info(f"🧮 Solving horizon-{problem.horizon} tracking problem")
    solution = solve_control(problem, config.control)

    check_log_range(solution.log_inputs, "optimal log-input", config.simulation.log_limit)
    trajectory = None
    if states_path:
        trajectory = rollout_controlled(model, np.exp(problem.x1_hat), solution, config.simulation)

    write_series(out_path, solution.primal_inputs, columns=[f"u{k + 1}" for k in range(model.m)])
    if trajectory is not None:
        write_series(states_path, trajectory.states[1:], start=2)
    console.print(f"objective = {solution.objective:.10g}", markup=False)
    console.print(f"kkt_residual = {solution.kkt_residual:.3e}", markup=False)
    _done(f"Inputs written to {out_path}")


if __name__ == "__main__":
    cli()
