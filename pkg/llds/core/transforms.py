"""
The log/exp change of variables between primal and log coordinates.

Natural logarithms are used throughout.
"""

import numpy as np

from llds.core.types import (
    ControlSequence,
    LogControlSequence,
    LogLinearModel,
    LogTrajectory,
    Trajectory,
)
from llds.errors import NonPositiveEntryError, StateOverflowError

# |log value| above this is treated as overflow; exp(700) is still finite in float64.
LOG_LIMIT = 700.0


def check_log_range(values: np.ndarray, what: str, limit: float = LOG_LIMIT) -> None:
    """Raise StateOverflowError if any log-space entry exceeds ``limit`` in magnitude."""
    magnitude = np.abs(values)
    if magnitude.size and float(np.max(magnitude)) > limit:
        index = tuple(int(i) for i in np.unravel_index(np.argmax(magnitude), values.shape))
        raise StateOverflowError(
            f"{what} entry {index} has log magnitude {magnitude[index]:.6g} > {limit:g}"
        )


def safe_log(values, what: str = "value") -> np.ndarray:
    """Elementwise natural log of strictly positive values."""
    values = np.asarray(values, dtype=np.float64)
    if np.any(values <= 0):
        index = tuple(int(i) for i in np.argwhere(values <= 0)[0])
        raise NonPositiveEntryError(f"{what} entry {index} is {values[index]!r}; must be > 0")
    return np.log(values)


def log_transform(x: Trajectory) -> LogTrajectory:
    return LogTrajectory(states=np.log(x.states))


def exp_transform(x_hat: LogTrajectory, limit: float = LOG_LIMIT) -> Trajectory:
    check_log_range(x_hat.states, "log trajectory", limit)
    return Trajectory(states=np.exp(x_hat.states))


def log_offset(model: LogLinearModel) -> np.ndarray:
    """Return ĉ = log c."""
    return model.log_c


def log_controls(u: ControlSequence) -> LogControlSequence:
    return LogControlSequence(inputs=np.log(u.inputs))


def exp_controls(u_hat: LogControlSequence, limit: float = LOG_LIMIT) -> ControlSequence:
    check_log_range(u_hat.inputs, "log control sequence", limit)
    return ControlSequence(inputs=np.exp(u_hat.inputs))
