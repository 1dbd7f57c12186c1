"""
One-step-ahead and free-run predictions for comparing a model with data.
"""

from typing import Optional

import numpy as np

from llds.config_manager import SimulationConfig
from llds.core import ControlSequence, LogLinearModel, Trajectory, check_log_range
from llds.errors import DimensionMismatchError, MissingControlError
from llds.simulate import simulate


def _log_inputs(
    model: LogLinearModel, x: Trajectory, controls: Optional[ControlSequence]
) -> Optional[np.ndarray]:
    if x.n != model.n:
        raise DimensionMismatchError(f"trajectory has n={x.n}, model has n={model.n}")
    if model.m == 0:
        if controls is not None and controls.m > 0:
            raise DimensionMismatchError("model is uncontrolled but controls were given")
        return None
    if controls is None:
        raise MissingControlError(f"model has {model.m} inputs but no controls were given")
    if controls.m != model.m or controls.length != x.T - 1:
        raise DimensionMismatchError(
            f"controls are {controls.length}x{controls.m}, expected {x.T - 1}x{model.m}"
        )
    return np.log(controls.inputs)


def one_step_predict(
    model: LogLinearModel,
    x: Trajectory,
    controls: Optional[ControlSequence] = None,
    config: Optional[SimulationConfig] = None,
) -> Trajectory:
    """
    Predict each state from the *measured* previous state.

    Returns:
        Trajectory of length T; the first state is copied from ``x``.
    """
    config = config or SimulationConfig()
    u_hat = _log_inputs(model, x, controls)
    x_hat = np.log(x.states)
    predicted = np.empty_like(x_hat)
    predicted[0] = x_hat[0]
    predicted[1:] = x_hat[:-1] @ model.A.T + model.log_c
    if u_hat is not None:
        predicted[1:] += u_hat @ model.B.T
    check_log_range(predicted, "predicted log-state", config.log_limit)
    return Trajectory(states=np.exp(predicted))


def free_run_predict(
    model: LogLinearModel,
    x: Trajectory,
    controls: Optional[ControlSequence] = None,
    config: Optional[SimulationConfig] = None,
) -> Trajectory:
    """Roll the model out from the first measured state only."""
    _log_inputs(model, x, controls)
    return simulate(model, x[0], x.T, controls=controls, config=config)


def log_rmse(real: Trajectory, predicted: Trajectory) -> float:
    """Root-mean-square log error over steps 2..T (the first state is given)."""
    if real.states.shape != predicted.states.shape:
        raise DimensionMismatchError(
            f"shapes differ: {real.states.shape} vs {predicted.states.shape}"
        )
    if real.T < 2:
        return 0.0
    error = np.log(predicted.states[1:]) - np.log(real.states[1:])
    return float(np.sqrt(np.mean(error**2)))
