"""
Exact and box-constrained solution of the quadratic tracking problem.

States are eliminated through the dynamics: stacking U = (û_1, ..., û_T) and
X = (x̂_2, ..., x̂_{T+1}) gives X = G U + h with G block lower triangular. The
objective becomes the strictly convex quadratic ``½ Uᵀ H U + gᵀ U + const`` with
``H = 2 (Gᵀ Q̄ G + R̄)``, which is solved by one dense linear solve. Input bounds
are handled by projected gradient with Armijo backtracking, warm-started from the
clipped unconstrained minimizer. The problem is never unbounded since R ≻ 0.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from llds.config_manager import ControlConfig, SimulationConfig
from llds.control.problem import ControlProblem, ControlSolution
from llds.core import ControlSequence, LogLinearModel, Trajectory, check_log_range
from llds.errors import DimensionMismatchError, IterationLimitError
from llds.numerics import solve_linear
from llds.simulate import simulate, step_log

logger = logging.getLogger("llds")

# Step reductions allowed in one Armijo search.
MAX_BACKTRACKS = 60


@dataclass(frozen=True)
class ReducedProblem:
    """The control problem after state elimination, in stacked coordinates."""

    G: np.ndarray  # nT×mT
    h: np.ndarray  # nT, free response
    H: np.ndarray  # mT×mT Hessian
    g: np.ndarray  # mT, gradient at U = 0
    constant: float  # objective at U = 0

    def value(self, U: np.ndarray) -> float:
        return float(0.5 * U @ self.H @ U + self.g @ U + self.constant)

    def gradient(self, U: np.ndarray) -> np.ndarray:
        return self.H @ U + self.g


def reduce_problem(problem: ControlProblem) -> ReducedProblem:
    """Eliminate the states and return the equivalent quadratic in the stacked inputs."""
    model = problem.model
    n, m, T = model.n, model.m, problem.horizon
    A, B, c_hat = model.A, model.B, model.log_c

    G = np.zeros((T * n, T * m))
    h = np.zeros(T * n)
    previous = problem.x1_hat
    for k in range(T):
        rows = slice(k * n, (k + 1) * n)
        if k > 0:
            G[rows, : k * m] = A @ G[(k - 1) * n : k * n, : k * m]
        G[rows, k * m : (k + 1) * m] = B
        h[rows] = A @ previous + c_hat
        previous = h[rows]

    Q_bar = np.kron(np.eye(T), problem.Q)
    R_bar = np.kron(np.eye(T), problem.R)
    offset = h - problem.refs.reshape(-1)

    H = 2.0 * (G.T @ Q_bar @ G + R_bar)
    H = 0.5 * (H + H.T)
    g = 2.0 * G.T @ Q_bar @ offset
    constant = float(offset @ Q_bar @ offset)
    return ReducedProblem(G=G, h=h, H=H, g=g, constant=constant)


def _check_inputs(problem: ControlProblem, log_inputs) -> np.ndarray:
    U = np.asarray(log_inputs, dtype=np.float64)
    expected = (problem.horizon, problem.model.m)
    if U.shape != expected and U.shape != (expected[0] * expected[1],):
        raise DimensionMismatchError(f"log-inputs must have shape {expected}, got {U.shape}")
    return U.reshape(expected)


def predicted_log_states(problem: ControlProblem, log_inputs) -> np.ndarray:
    """Roll x̂_2..x̂_{T+1} forward from x̂_1 under the given log-inputs."""
    U = _check_inputs(problem, log_inputs)
    states = np.empty((problem.horizon, problem.model.n))
    x_hat = problem.x1_hat
    for t in range(problem.horizon):
        x_hat = step_log(problem.model, x_hat, U[t])
        states[t] = x_hat
    return states


def objective_value(problem: ControlProblem, log_inputs) -> float:
    """
    Tracking objective of a log-input sequence, with states rolled out explicitly.

    Raises:
        DimensionMismatchError: If ``log_inputs`` is not T×m
    """
    U = _check_inputs(problem, log_inputs)
    errors = predicted_log_states(problem, U) - problem.refs
    state_cost = np.einsum("ti,ij,tj->", errors, problem.Q, errors)
    input_cost = np.einsum("ti,ij,tj->", U, problem.R, U)
    return float(state_cost + input_cost)


def reduced_gradient(problem: ControlProblem, log_inputs) -> np.ndarray:
    """Gradient of the objective with respect to the log-inputs, as a T×m array."""
    U = _check_inputs(problem, log_inputs)
    reduced = reduce_problem(problem)
    return reduced.gradient(U.reshape(-1)).reshape(U.shape)


def _projected_gradient(
    reduced: ReducedProblem,
    start: np.ndarray,
    lower: np.ndarray,
    upper: np.ndarray,
    config: ControlConfig,
) -> tuple[np.ndarray, float, int]:
    U = np.clip(start, lower, upper)
    step_size = 1.0 / float(np.linalg.norm(reduced.H))  # Frobenius norm bounds the curvature
    value = reduced.value(U)

    for iteration in range(config.max_iterations + 1):
        gradient = reduced.gradient(U)
        stationarity = float(np.max(np.abs(U - np.clip(U - gradient, lower, upper))))
        if stationarity <= config.stationarity_tolerance:
            return U, stationarity, iteration
        if iteration == config.max_iterations:
            break

        step_size *= 2.0
        for _ in range(MAX_BACKTRACKS):
            candidate = np.clip(U - step_size * gradient, lower, upper)
            candidate_value = reduced.value(candidate)
            decrease = config.armijo_fraction * float(gradient @ (candidate - U))
            if candidate_value <= value + decrease:
                break
            step_size *= config.backtrack_factor
        else:
            raise IterationLimitError(
                f"line search found no sufficient decrease after {MAX_BACKTRACKS} reductions "
                f"(iteration {iteration}, stationarity {stationarity:.3e})"
            )
        U, value = candidate, candidate_value

    raise IterationLimitError(
        f"projected gradient did not reach stationarity {config.stationarity_tolerance:g} "
        f"within {config.max_iterations} iterations (last {stationarity:.3e})"
    )


def solve_control(
    problem: ControlProblem, config: Optional[ControlConfig] = None
) -> ControlSolution:
    """
    Solve the tracking problem.

    Without bounds the exact minimizer is returned and ``kkt_residual`` is the
    max-norm of the reduced gradient there. With bounds the returned point satisfies
    them exactly and ``kkt_residual`` is the projected-gradient stationarity
    ``||û - clip(û - ∇)||_∞``.

    Raises:
        IterationLimitError: If the bounded solver exceeds ``config.max_iterations``
    """
    config = config or ControlConfig()
    reduced = reduce_problem(problem)
    T, m = problem.horizon, problem.model.m

    U = solve_linear(reduced.H, -reduced.g)
    iterations = 0
    if problem.bounded:
        lower, upper = problem.bound_arrays()
        U, kkt, iterations = _projected_gradient(
            reduced, U, lower.reshape(-1), upper.reshape(-1), config
        )
        logger.debug(f"Projected gradient converged in {iterations} iterations")
    else:
        kkt = float(np.max(np.abs(reduced.gradient(U))))

    log_inputs = np.array(U).reshape(T, m)
    solution = ControlSolution(
        log_inputs=log_inputs,
        log_states=predicted_log_states(problem, log_inputs),
        objective=objective_value(problem, log_inputs),
        kkt_residual=kkt,
        iterations=iterations,
    )
    logger.info(f"🎯 Control objective {solution.objective:.6g} (kkt {kkt:.2e})")
    return solution


def rollout_controlled(
    model: LogLinearModel,
    x1: np.ndarray,
    solution: ControlSolution,
    config: Optional[SimulationConfig] = None,
) -> Trajectory:
    """
    Noiseless rollout of ``model`` from ``x1`` under the solution's inputs.

    Returns:
        Trajectory of length T + 1 starting at x1

    Raises:
        DimensionMismatchError: If the solution does not match the model
    """
    if solution.log_inputs.shape[1] != model.m or solution.log_states.shape[1] != model.n:
        raise DimensionMismatchError(
            f"solution is for n={solution.log_states.shape[1]}, m={solution.log_inputs.shape[1]}; "
            f"model has n={model.n}, m={model.m}"
        )
    check_log_range(solution.log_inputs, "log-input", (config or SimulationConfig()).log_limit)
    controls = ControlSequence(inputs=solution.primal_inputs)
    return simulate(model, x1, solution.horizon + 1, controls=controls, config=config)
