"""Finite-horizon quadratic tracking control over log-space dynamics."""

from llds.control.problem import ControlProblem, ControlSolution
from llds.control.solver import (
    ReducedProblem,
    objective_value,
    predicted_log_states,
    reduce_problem,
    reduced_gradient,
    rollout_controlled,
    solve_control,
)

__all__ = [
    "ControlProblem",
    "ControlSolution",
    "ReducedProblem",
    "reduce_problem",
    "objective_value",
    "predicted_log_states",
    "reduced_gradient",
    "solve_control",
    "rollout_controlled",
]
