"""
Stepping, rollout and fixed points of log-linear dynamics.

Every step is computed as the affine log-space update
``x̂+ = A x̂ + B û + ĉ + ẑ`` and exponentiated once; monomials are never evaluated
in primal space.
"""

import logging
from typing import Optional

import numpy as np

from llds.config_manager import SimulationConfig
from llds.core import (
    ControlSequence,
    LogLinearModel,
    Trajectory,
    check_log_range,
    safe_log,
)
from llds.errors import DimensionMismatchError, MissingControlError, TooShortError
from llds.numerics import as_vector, solve_linear
from llds.simulate.noise import NoiseSpec, sample_noise

logger = logging.getLogger("llds")


def _check_vector(v, dim: int, name: str) -> np.ndarray:
    v = as_vector(v, name)
    if v.shape[0] != dim:
        raise DimensionMismatchError(f"{name} has dimension {v.shape[0]}, expected {dim}")
    return v


def step_log(
    model: LogLinearModel,
    x_hat: np.ndarray,
    u_hat: Optional[np.ndarray] = None,
    z_hat: Optional[np.ndarray] = None,
) -> np.ndarray:
    """Affine log-space update; no overflow check, no positivity requirement."""
    x_hat = _check_vector(x_hat, model.n, "log-state")
    nxt = model.A @ x_hat + model.log_c
    if model.m > 0:
        if u_hat is None:
            raise MissingControlError(f"model has {model.m} inputs but none were given")
        nxt = nxt + model.B @ _check_vector(u_hat, model.m, "log-input")
    elif u_hat is not None and np.size(u_hat) > 0:
        raise DimensionMismatchError("model is uncontrolled but an input was given")
    if z_hat is not None:
        nxt = nxt + _check_vector(z_hat, model.n, "noise")
    return nxt


def step(
    model: LogLinearModel,
    x: np.ndarray,
    u: Optional[np.ndarray] = None,
    z_hat: Optional[np.ndarray] = None,
    config: Optional[SimulationConfig] = None,
) -> np.ndarray:
    """
    Advance a positive state one step.

    Args:
        model: the dynamics
        x: strictly positive state, dimension n
        u: strictly positive input, dimension m; required iff model.m > 0
        z_hat: optional log-space noise, dimension n
        config: simulation settings (overflow threshold)

    Returns:
        Strictly positive next state

    Raises:
        DimensionMismatchError, MissingControlError, StateOverflowError
    """
    config = config or SimulationConfig()
    x_hat = safe_log(_check_vector(x, model.n, "state"), "state")
    u_hat = None if u is None else safe_log(as_vector(u, "input"), "input")
    nxt = step_log(model, x_hat, u_hat, z_hat)
    check_log_range(nxt, "next log-state", config.log_limit)
    return np.exp(nxt)


def simulate(
    model: LogLinearModel,
    x1: np.ndarray,
    T: int,
    controls: Optional[ControlSequence] = None,
    noise: Optional[NoiseSpec] = None,
    config: Optional[SimulationConfig] = None,
) -> Trajectory:
    """
    Roll the dynamics out from ``x1`` for a trajectory of length ``T``.

    Args:
        model: the dynamics
        x1: strictly positive initial state
        T: trajectory length (>= 1); T - 1 steps are taken
        controls: inputs u_1..u_{T-1}; required iff model.m > 0
        noise: optional log-normal noise; draws are reproducible from its seed
        config: simulation settings

    Returns:
        Trajectory of length T whose first state is x1
    """
    config = config or SimulationConfig()
    if T < 1:
        raise TooShortError(f"T must be at least 1, got {T}")

    x1 = _check_vector(x1, model.n, "initial state")
    x_hat = safe_log(x1, "initial state")
    steps = T - 1

    u_hat = None
    if model.m > 0:
        if controls is None:
            raise MissingControlError(f"model has {model.m} inputs but no controls were given")
        if controls.m != model.m:
            raise DimensionMismatchError(
                f"controls have dimension {controls.m}, model expects {model.m}"
            )
        if controls.length != steps:
            raise DimensionMismatchError(
                f"controls have length {controls.length}, expected T - 1 = {steps}"
            )
        u_hat = np.log(controls.inputs)
    elif controls is not None and controls.m > 0:
        raise DimensionMismatchError("model is uncontrolled but controls were given")

    z_hat = sample_noise(noise, model.n, steps) if noise is not None else None

    log_states = np.empty((T, model.n))
    log_states[0] = x_hat
    for t in range(steps):
        log_states[t + 1] = step_log(
            model,
            log_states[t],
            None if u_hat is None else u_hat[t],
            None if z_hat is None else z_hat[t],
        )
        check_log_range(log_states[t + 1], f"log-state at step {t + 2}", config.log_limit)

    logger.debug(
        f"Simulated {T} steps (n={model.n}, m={model.m}, "
        f"sigma={noise.sigma if noise else 0.0})"
    )
    states = np.exp(log_states)
    states[0] = x1
    return Trajectory(states=states)


def fixed_point(
    model: LogLinearModel,
    u: Optional[np.ndarray] = None,
    config: Optional[SimulationConfig] = None,
) -> np.ndarray:
    """
    Positive fixed point ``x* = exp((I - A)^{-1} ĉ)``.

    For a controlled model a constant input ``u`` is required and the offset
    becomes ``ĉ + B û``.

    Raises:
        SingularMatrixError: If I - A is singular
        MissingControlError: If the model is controlled and ``u`` is absent
    """
    config = config or SimulationConfig()
    offset = model.log_c
    if model.m > 0:
        if u is None:
            raise MissingControlError("a constant input is required for a controlled model")
        u_hat = safe_log(_check_vector(u, model.m, "input"), "input")
        offset = offset + model.B @ u_hat
    elif u is not None and np.size(u) > 0:
        raise DimensionMismatchError("model is uncontrolled but an input was given")

    x_hat = solve_linear(np.eye(model.n) - model.A, offset)
    check_log_range(x_hat, "fixed point", config.log_limit)
    return np.exp(x_hat)
