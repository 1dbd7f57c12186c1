"""
Domain value objects: models, trajectories and control sequences.

All objects are immutable pydantic models holding read-only float64 arrays.
Shape, finiteness and positivity are checked once, at construction, so the rest
of the package can rely on them.
"""

from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from llds.errors import DimensionMismatchError, NonPositiveEntryError
from llds.numerics import as_matrix, as_vector


def _require_positive(values: np.ndarray, what: str) -> None:
    bad = np.argwhere(values <= 0)
    if bad.size:
        index = tuple(int(i) for i in bad[0])
        raise NonPositiveEntryError(
            f"{what} entry {index} is {values[index]!r}; all entries must be > 0"
        )


def _as_rows(data, name: str) -> np.ndarray:
    rows = as_matrix(data, name)
    if rows.shape[0] < 1 or rows.shape[1] < 1:
        raise DimensionMismatchError(f"{name} must have at least one row and column")
    return rows


class LogLinearModel(BaseModel):
    """
    Monomial update ``(x+)_i = c_i * prod_j x_j**A_ij * prod_k u_k**B_ik``.

    In log coordinates this is ``x̂+ = A x̂ + B û + ĉ`` with ``ĉ = log c``.
    ``B`` is present iff the model is controlled (m > 0).
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    A: np.ndarray
    c: np.ndarray
    B: Optional[np.ndarray] = None

    @field_validator("A", mode="before")
    @classmethod
    def _check_A(cls, value):
        return as_matrix(value, "A")

    @field_validator("c", mode="before")
    @classmethod
    def _check_c(cls, value):
        c = as_vector(value, "c")
        _require_positive(c, "c")
        return c

    @field_validator("B", mode="before")
    @classmethod
    def _check_B(cls, value):
        if value is None:
            return None
        return as_matrix(value, "B")

    @model_validator(mode="after")
    def _check_dimensions(self):
        n = self.A.shape[0]
        if n == 0:
            raise DimensionMismatchError("state dimension must be at least 1")
        if self.A.shape != (n, n):
            raise DimensionMismatchError(f"A must be square, got {self.A.shape}")
        if self.c.shape != (n,):
            raise DimensionMismatchError(f"c has dimension {self.c.shape[0]}, expected {n}")
        if self.B is not None:
            if self.B.shape[0] != n:
                raise DimensionMismatchError(f"B has {self.B.shape[0]} rows, expected {n}")
            if self.B.shape[1] == 0:
                raise DimensionMismatchError("B must have at least one column")
        return self

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def m(self) -> int:
        return 0 if self.B is None else self.B.shape[1]

    @property
    def log_c(self) -> np.ndarray:
        return np.log(self.c)


class Trajectory(BaseModel):
    """Ordered strictly positive states x_1..x_T, stored as a T×n array."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    states: np.ndarray

    @field_validator("states", mode="before")
    @classmethod
    def _check_states(cls, value):
        states = _as_rows(value, "trajectory")
        _require_positive(states, "trajectory state")
        return states

    @property
    def n(self) -> int:
        return self.states.shape[1]

    @property
    def T(self) -> int:
        return self.states.shape[0]

    def __len__(self) -> int:
        return self.T

    def __getitem__(self, index) -> np.ndarray:
        return self.states[index]


class LogTrajectory(BaseModel):
    """Log-space twin of :class:`Trajectory`; entries are finite of any sign."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    states: np.ndarray

    @field_validator("states", mode="before")
    @classmethod
    def _check_states(cls, value):
        return _as_rows(value, "log trajectory")

    @property
    def n(self) -> int:
        return self.states.shape[1]

    @property
    def T(self) -> int:
        return self.states.shape[0]

    def __len__(self) -> int:
        return self.T

    def __getitem__(self, index) -> np.ndarray:
        return self.states[index]


class ControlSequence(BaseModel):
    """
    Strictly positive inputs u_1..u_L stored as an L×m array.

    A zero-width sequence (m = 0) is allowed and stands for "no inputs".
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    inputs: np.ndarray

    @field_validator("inputs", mode="before")
    @classmethod
    def _check_inputs(cls, value):
        inputs = as_matrix(value, "control sequence")
        _require_positive(inputs, "control input")
        return inputs

    @classmethod
    def empty(cls, length: int) -> "ControlSequence":
        return cls(inputs=np.zeros((length, 0)))

    @property
    def m(self) -> int:
        return self.inputs.shape[1]

    @property
    def length(self) -> int:
        return self.inputs.shape[0]

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, index) -> np.ndarray:
        return self.inputs[index]


class LogControlSequence(BaseModel):
    """Log-space twin of :class:`ControlSequence`."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    inputs: np.ndarray

    @field_validator("inputs", mode="before")
    @classmethod
    def _check_inputs(cls, value):
        return as_matrix(value, "log control sequence")

    @property
    def m(self) -> int:
        return self.inputs.shape[1]

    @property
    def length(self) -> int:
        return self.inputs.shape[0]

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, index) -> np.ndarray:
        return self.inputs[index]
