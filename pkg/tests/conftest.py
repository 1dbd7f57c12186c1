"""Shared fixtures and model factories for the llds test suite."""

import numpy as np
import pytest

from llds.control import ControlProblem
from llds.core import LogLinearModel

# Real eigenvalues used to build stable test models, spectral radius 0.85.
EIGENVALUE_GRID = np.array([-0.85, -0.6, -0.35, 0.35, 0.6, 0.85])


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def random_stable_A(rng: np.random.Generator, n: int) -> np.ndarray:
    """A = V diag(λ) V⁻¹ with distinct real λ drawn from EIGENVALUE_GRID."""
    eigenvalues = rng.choice(EIGENVALUE_GRID, size=n, replace=False)
    V = np.eye(n) + 0.3 * rng.standard_normal((n, n))
    while np.linalg.cond(V) > 10.0:
        V = np.eye(n) + 0.3 * rng.standard_normal((n, n))
    return V @ np.diag(eigenvalues) @ np.linalg.inv(V)


def random_stable_model(rng: np.random.Generator, n: int, m: int = 0) -> LogLinearModel:
    A = random_stable_A(rng, n)
    c = np.exp(rng.uniform(-0.5, 0.5, n))
    B = rng.standard_normal((n, m)) if m else None
    return LogLinearModel(A=A, c=c, B=B)


def rotation_model(rng: np.random.Generator) -> LogLinearModel:
    """Damped rotation A = ρ R(θ), a 2-state model with oscillating transients."""
    rho = rng.uniform(0.7, 0.9)
    theta = rng.uniform(0.3, 1.2)
    A = rho * np.array([[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]])
    return LogLinearModel(A=A, c=np.exp(rng.uniform(-0.5, 0.5, 2)))


def log_fixed_point(model: LogLinearModel) -> np.ndarray:
    return np.linalg.solve(np.eye(model.n) - model.A, model.log_c)


def spectral_radius(A: np.ndarray, power: int = 256) -> float:
    """Gelfand estimate ||A^k||^(1/k); overestimates by at most cond(V)^(1/k)."""
    norm = np.linalg.norm(np.linalg.matrix_power(A, power), 2)
    return float(norm ** (1.0 / power))


def random_control_problem(
    rng: np.random.Generator, n: int, m: int, horizon: int, **bounds
) -> ControlProblem:
    model = random_stable_model(rng, n, m)
    L = rng.standard_normal((n, n))
    M = rng.standard_normal((m, m))
    return ControlProblem.build(
        model,
        x1_hat=rng.standard_normal(n),
        refs=rng.standard_normal((horizon, n)),
        state_weight=L @ L.T,
        input_weight=M @ M.T + 0.5 * np.eye(m),
        **bounds,
    )


def batch_objective(problem: ControlProblem, samples: np.ndarray) -> np.ndarray:
    """Tracking objective of S candidate log-input sequences (S×T×m) at once."""
    model = problem.model
    x_hat = np.broadcast_to(problem.x1_hat, (samples.shape[0], model.n))
    total = np.zeros(samples.shape[0])
    for t in range(problem.horizon):
        u_hat = samples[:, t, :]
        x_hat = x_hat @ model.A.T + u_hat @ model.B.T + model.log_c
        error = x_hat - problem.refs[t]
        total += np.einsum("si,ij,sj->s", error, problem.Q, error)
        total += np.einsum("si,ij,sj->s", u_hat, problem.R, u_hat)
    return total


def brute_force_minimum(
    problem: ControlProblem,
    center: np.ndarray,
    rng: np.random.Generator,
    samples: int = 100_000,
    radius: float = 0.5,
) -> float:
    """Best objective among random log-input sequences scattered around ``center``."""
    shape = (samples, problem.horizon, problem.model.m)
    candidates = center[None, :, :] + radius * rng.standard_normal(shape)
    return float(np.min(batch_objective(problem, candidates)))
