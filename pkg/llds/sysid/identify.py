"""
Least-squares identification of log-linear dynamics.

All n rows of ``[A B ĉ]`` share one regressor matrix with rows ``[x̂_t û_t 1]``,
so the fit is a single multi-right-hand-side least-squares solve.
"""

import logging
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from llds.config_manager import IdentificationConfig
from llds.core import ControlSequence, LogLinearModel, Trajectory
from llds.errors import DimensionMismatchError, InsufficientDataError, TooShortError
from llds.numerics import least_squares

logger = logging.getLogger("llds")


class SysIdResult(BaseModel):
    """Fitted model with its log-space one-step residuals and noise estimate."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    model: LogLinearModel
    residuals: np.ndarray  # (T-1)×n, row t is r̂_{t+1}
    sigma_hat: float = Field(ge=0.0)
    sse: float = Field(ge=0.0)
    dof: int  # n * (N - params_per_row)

    @model_validator(mode="after")
    def _check_residuals(self):
        if self.residuals.ndim != 2 or self.residuals.shape[1] != self.model.n:
            raise DimensionMismatchError(
                f"residuals must be N×{self.model.n}, got {self.residuals.shape}"
            )
        return self

    @property
    def params_per_row(self) -> int:
        return self.model.n + self.model.m + 1


def estimate_sigma(residuals: np.ndarray, n: int, params_per_row: int) -> float:
    """
    Degrees-of-freedom corrected per-component noise scale.

    ``σ̂ = sqrt(Σ_t ||r̂_t||² / (n (N - params_per_row)))`` with N residual vectors.

    Raises:
        InsufficientDataError: If N - params_per_row <= 0
    """
    residuals = np.asarray(residuals, dtype=np.float64).reshape(-1, n)
    count = residuals.shape[0]
    dof = n * (count - params_per_row)
    if count < 1 or dof <= 0:
        raise InsufficientDataError(
            f"{count} residuals with {params_per_row} parameters per row "
            "leave no degrees of freedom"
        )
    return float(np.sqrt(np.sum(residuals**2) / dof))


def _fit(
    x_hat: np.ndarray,
    u_hat: Optional[np.ndarray],
    config: IdentificationConfig,
) -> SysIdResult:
    n = x_hat.shape[1]
    m = 0 if u_hat is None else u_hat.shape[1]
    count = x_hat.shape[0] - 1
    params = n + m + 1

    blocks = [x_hat[:-1]]
    if m:
        blocks.append(u_hat)
    blocks.append(np.ones((count, 1)))
    regressors = np.hstack(blocks)
    targets = x_hat[1:]

    # W is params×n; its transpose is [A B ĉ].
    W = least_squares(regressors, targets, tolerance=config.rank_tolerance)
    theta = W.T
    A = theta[:, :n]
    B = theta[:, n : n + m] if m else None
    c_hat = theta[:, -1]

    residuals = targets - regressors @ W
    sse = float(np.sum(residuals**2))

    dof = n * (count - params)
    if dof > 0:
        sigma_hat = estimate_sigma(residuals, n, params)
    else:
        # T = n + m + 2 interpolates exactly; nothing is left to estimate noise from.
        logger.warning("⚠️  Fit leaves no degrees of freedom; reporting sigma_hat = 0")
        sigma_hat = 0.0

    model = LogLinearModel(A=A, c=np.exp(c_hat), B=B)
    residuals.flags.writeable = False
    logger.debug(f"Identified n={n}, m={m} from {count} transitions, sse={sse:.6g}")
    return SysIdResult(model=model, residuals=residuals, sigma_hat=sigma_hat, sse=sse, dof=dof)


def identify(
    x: Trajectory, config: Optional[IdentificationConfig] = None
) -> SysIdResult:
    """
    Fit A and ĉ minimizing ``Σ_t ||x̂_{t+1} - A x̂_t - ĉ||²``.

    Raises:
        TooShortError: If T < n + 2
        RankDeficientError: If the regressors ``[x̂_t 1]`` are collinear
            (insufficient excitation, e.g. a constant trajectory)
    """
    config = config or IdentificationConfig()
    if x.T < x.n + 2:
        raise TooShortError(f"trajectory length {x.T} < n + 2 = {x.n + 2}")
    return _fit(np.log(x.states), None, config)


def identify_controlled(
    x: Trajectory,
    u: ControlSequence,
    config: Optional[IdentificationConfig] = None,
) -> SysIdResult:
    """
    Fit A, B and ĉ minimizing ``Σ_t ||x̂_{t+1} - A x̂_t - B û_t - ĉ||²``.

    ``u`` must have length T - 1. A zero-width ``u`` reduces to :func:`identify`.

    Raises:
        DimensionMismatchError: If u has the wrong length
        TooShortError: If T - 1 < n + m + 1
        RankDeficientError: If the regressors ``[x̂_t û_t 1]`` are collinear
    """
    config = config or IdentificationConfig()
    if u.length != x.T - 1:
        raise DimensionMismatchError(
            f"inputs have length {u.length}, expected T - 1 = {x.T - 1}"
        )
    if u.m == 0:
        return identify(x, config)
    if x.T - 1 < x.n + u.m + 1:
        raise TooShortError(
            f"{x.T - 1} transitions < n + m + 1 = {x.n + u.m + 1} parameters per row"
        )
    return _fit(np.log(x.states), np.log(u.inputs), config)
