"""
Finite-horizon quadratic tracking problem over log-space linear dynamics.

minimize    Σ_{t=1..T} (x̂_{t+1} - r_{t+1})ᵀ Q (x̂_{t+1} - r_{t+1}) + û_tᵀ R û_t
subject to  x̂_{t+1} = A x̂_t + B û_t + ĉ,   lower_t <= û_t <= upper_t
"""

from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from llds.core import LogLinearModel
from llds.errors import DimensionMismatchError, InfeasibleBoundsError, InvalidWeightError
from llds.numerics import as_matrix, as_vector

SYMMETRY_TOLERANCE = 1e-12
DEFINITENESS_MARGIN = 1e-10


def _expand_weight(weight, dim: int, name: str) -> np.ndarray:
    """A scalar weight means ``weight * I``."""
    array = np.asarray(weight, dtype=np.float64)
    if array.ndim == 0:
        return np.eye(dim) * float(array)
    return as_matrix(array, name)


def _expand_bound(bound, horizon: int, m: int, name: str) -> Optional[np.ndarray]:
    """Broadcast a scalar, a length-m vector, or a T×m array to T×m."""
    if bound is None:
        return None
    array = np.asarray(bound, dtype=np.float64)
    if array.ndim == 0 or (array.ndim == 1 and array.shape[0] == m):
        return np.broadcast_to(array, (horizon, m)).copy()
    return as_matrix(array, name)


def _is_psd(matrix: np.ndarray, shift: float) -> bool:
    try:
        np.linalg.cholesky(matrix + shift * np.eye(matrix.shape[0]))
    except np.linalg.LinAlgError:
        return False
    return True


def _check_symmetric(matrix: np.ndarray, name: str) -> None:
    scale = max(1.0, float(np.max(np.abs(matrix))))
    if np.max(np.abs(matrix - matrix.T)) > SYMMETRY_TOLERANCE * scale:
        raise InvalidWeightError(f"{name} is not symmetric")


class ControlProblem(BaseModel):
    """
    Quadratic tracking instance of the finite-horizon control problem.

    Use :meth:`build` to pass scalar weights or broadcastable bounds.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    model: LogLinearModel
    x1_hat: np.ndarray  # initial log-state
    refs: np.ndarray  # T×n log-space targets for x̂_2..x̂_{T+1}
    Q: np.ndarray
    R: np.ndarray
    lower: Optional[np.ndarray] = None  # T×m bounds on û_t
    upper: Optional[np.ndarray] = None

    @field_validator("x1_hat", mode="before")
    @classmethod
    def _check_x1(cls, value):
        return as_vector(value, "initial log-state")

    @field_validator("refs", mode="before")
    @classmethod
    def _check_refs(cls, value):
        return as_matrix(value, "references")

    @field_validator("Q", "R", mode="before")
    @classmethod
    def _check_weight(cls, value, info):
        return as_matrix(value, info.field_name)

    @field_validator("lower", "upper", mode="before")
    @classmethod
    def _check_bound(cls, value, info):
        return None if value is None else as_matrix(value, f"{info.field_name} bound")

    @model_validator(mode="after")
    def _check_problem(self):
        n, m, T = self.model.n, self.model.m, self.refs.shape[0]
        if m < 1:
            raise DimensionMismatchError("control problems need a model with inputs (m >= 1)")
        if T < 1:
            raise DimensionMismatchError("horizon must be at least 1")
        if self.x1_hat.shape != (n,):
            raise DimensionMismatchError(
                f"initial log-state has dimension {self.x1_hat.shape[0]}, expected {n}"
            )
        if self.refs.shape[1] != n:
            raise DimensionMismatchError(f"references have {self.refs.shape[1]} columns, expected {n}")
        if self.Q.shape != (n, n):
            raise DimensionMismatchError(f"Q must be {n}x{n}, got {self.Q.shape}")
        if self.R.shape != (m, m):
            raise DimensionMismatchError(f"R must be {m}x{m}, got {self.R.shape}")

        _check_symmetric(self.Q, "Q")
        _check_symmetric(self.R, "R")
        if not _is_psd(self.Q, DEFINITENESS_MARGIN):
            raise InvalidWeightError("Q is not positive semidefinite")
        if not _is_psd(self.R, -DEFINITENESS_MARGIN):
            raise InvalidWeightError("R is not positive definite")

        for name, bound in (("lower", self.lower), ("upper", self.upper)):
            if bound is not None and bound.shape != (T, m):
                raise DimensionMismatchError(f"{name} bound must be {T}x{m}, got {bound.shape}")
        if self.lower is not None and self.upper is not None:
            bad = np.argwhere(self.lower >= self.upper)
            if bad.size:
                t, k = (int(i) for i in bad[0])
                raise InfeasibleBoundsError(
                    f"step {t + 1}, input {k + 1}: lower {self.lower[t, k]:g} "
                    f">= upper {self.upper[t, k]:g}"
                )
        return self

    @classmethod
    def build(
        cls,
        model: LogLinearModel,
        x1_hat,
        refs,
        state_weight=1.0,
        input_weight=1.0,
        lower=None,
        upper=None,
    ) -> "ControlProblem":
        """Construct a problem, expanding scalar weights and broadcasting bounds."""
        refs = as_matrix(np.atleast_2d(np.asarray(refs, dtype=np.float64)), "references")
        horizon = refs.shape[0]
        return cls(
            model=model,
            x1_hat=x1_hat,
            refs=refs,
            Q=_expand_weight(state_weight, model.n, "Q"),
            R=_expand_weight(input_weight, model.m, "R"),
            lower=_expand_bound(lower, horizon, model.m, "lower"),
            upper=_expand_bound(upper, horizon, model.m, "upper"),
        )

    @property
    def horizon(self) -> int:
        return self.refs.shape[0]

    @property
    def bounded(self) -> bool:
        return self.lower is not None or self.upper is not None

    def bound_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Lower and upper bounds as T×m arrays, ±inf where absent."""
        shape = (self.horizon, self.model.m)
        lower = self.lower if self.lower is not None else np.full(shape, -np.inf)
        upper = self.upper if self.upper is not None else np.full(shape, np.inf)
        return lower, upper


class ControlSolution(BaseModel):
    """Optimal log-inputs with the predicted log-states they produce."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    log_inputs: np.ndarray  # T×m, û_1..û_T
    log_states: np.ndarray  # T×n, x̂_2..x̂_{T+1}
    objective: float
    kkt_residual: float
    iterations: int = 0

    @property
    def horizon(self) -> int:
        return self.log_inputs.shape[0]

    @property
    def primal_inputs(self) -> np.ndarray:
        return np.exp(self.log_inputs)
