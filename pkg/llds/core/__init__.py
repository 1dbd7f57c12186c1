"""Domain types and the log/exp change of variables."""

from llds.core.transforms import (
    LOG_LIMIT,
    check_log_range,
    exp_controls,
    exp_transform,
    log_controls,
    log_offset,
    log_transform,
    safe_log,
)
from llds.core.types import (
    ControlSequence,
    LogControlSequence,
    LogLinearModel,
    LogTrajectory,
    Trajectory,
)

__all__ = [
    # Types
    "LogLinearModel",
    "Trajectory",
    "LogTrajectory",
    "ControlSequence",
    "LogControlSequence",
    # Transforms
    "LOG_LIMIT",
    "check_log_range",
    "safe_log",
    "log_transform",
    "exp_transform",
    "log_offset",
    "log_controls",
    "exp_controls",
]
