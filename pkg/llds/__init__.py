"""
llds - Log-linear dynamical systems: positive monomial dynamics that become
linear after a log transform.
"""

__version__ = "0.1.0"

from llds.config_manager import (
    ControlConfig,
    IdentificationConfig,
    LldsConfig,
    LoggingConfig,
    PlotConfig,
    SimulationConfig,
)
from llds.control import ControlProblem, ControlSolution, rollout_controlled, solve_control
from llds.core import (
    ControlSequence,
    LogControlSequence,
    LogLinearModel,
    LogTrajectory,
    Trajectory,
    exp_transform,
    log_transform,
)
from llds.errors import LldsError
from llds.io import (
    emit_plot,
    free_run_predict,
    load_hare_lynx,
    one_step_predict,
    read_model_file,
    read_series,
    write_model_file,
    write_series,
)
from llds.simulate import NoiseSpec, fixed_point, simulate, step
from llds.sysid import SysIdResult, identify, identify_controlled

__all__ = [
    # Types
    "LogLinearModel",
    "Trajectory",
    "LogTrajectory",
    "ControlSequence",
    "LogControlSequence",
    "log_transform",
    "exp_transform",
    # Simulation
    "NoiseSpec",
    "step",
    "simulate",
    "fixed_point",
    # Identification
    "SysIdResult",
    "identify",
    "identify_controlled",
    # Control
    "ControlProblem",
    "ControlSolution",
    "solve_control",
    "rollout_controlled",
    # IO
    "read_series",
    "write_series",
    "read_model_file",
    "write_model_file",
    "one_step_predict",
    "free_run_predict",
    "emit_plot",
    "load_hare_lynx",
    # Configuration
    "LldsConfig",
    "LoggingConfig",
    "SimulationConfig",
    "IdentificationConfig",
    "ControlConfig",
    "PlotConfig",
    "LldsError",
]
