"""
Search for the contiguous slice of a series whose fit best matches reference coefficients.

Published fits often leave the exact slice of a long historical record unstated.
Every window of at least ``min_length`` rows is fitted with :func:`identify` and
scored against the reference A and c.
"""

import logging
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from llds.config_manager import IdentificationConfig
from llds.core import Trajectory
from llds.errors import DimensionMismatchError, LldsError, TooShortError
from llds.numerics import as_matrix, as_vector
from llds.sysid.identify import SysIdResult, identify

logger = logging.getLogger("llds")


class WindowMatch(BaseModel):
    """Best window found by :func:`match_window`; labels are inclusive step labels."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    first: int
    last: int
    a_error: float = Field(ge=0.0)  # max |A - A_ref| entry
    c_error: float = Field(ge=0.0)  # max |c - c_ref| / |c_ref| entry
    score: float = Field(ge=0.0)  # <= 1 when both tolerances hold
    result: SysIdResult

    @property
    def length(self) -> int:
        return self.last - self.first + 1


def window_errors(result: SysIdResult, A_ref: np.ndarray, c_ref: np.ndarray) -> tuple[float, float]:
    a_error = float(np.max(np.abs(result.model.A - A_ref)))
    c_error = float(np.max(np.abs(result.model.c - c_ref) / np.abs(c_ref)))
    return a_error, c_error


def match_window(
    x: Trajectory,
    A_ref,
    c_ref,
    start: int = 1,
    min_length: Optional[int] = None,
    a_tolerance: float = 0.08,
    c_tolerance: float = 0.15,
    config: Optional[IdentificationConfig] = None,
) -> WindowMatch:
    """
    Fit every window of ``x`` and return the one closest to ``A_ref``, ``c_ref``.

    Windows are ranked by ``max(a_error / a_tolerance, c_error / c_tolerance)``;
    scores equal to six decimals tie and go to the longer, then the earlier,
    window. Windows whose fit fails (for example rank deficiency) are skipped.

    Args:
        x: full series
        A_ref: n×n reference dynamics
        c_ref: length-n positive reference scale
        start: step label of the first row of ``x``
        min_length: shortest window considered; defaults to n + 3

    Raises:
        DimensionMismatchError: If the references do not match the series dimension
        TooShortError: If no window of ``min_length`` rows fits inside ``x``
            or every window failed to fit
    """
    A_ref = as_matrix(A_ref, "A_ref")
    c_ref = as_vector(c_ref, "c_ref")
    if A_ref.shape != (x.n, x.n) or c_ref.shape != (x.n,):
        raise DimensionMismatchError(
            f"references are {A_ref.shape} and {c_ref.shape} for a series with n={x.n}"
        )
    if np.any(c_ref == 0):
        raise DimensionMismatchError("c_ref entries must be nonzero")
    min_length = x.n + 3 if min_length is None else max(min_length, x.n + 2)
    if x.T < min_length:
        raise TooShortError(f"series length {x.T} < window length {min_length}")

    config = config or IdentificationConfig()
    best: Optional[WindowMatch] = None
    best_key = None
    for i in range(x.T - min_length + 1):
        for j in range(i + min_length, x.T + 1):
            try:
                result = identify(Trajectory(states=x.states[i:j]), config)
            except LldsError as e:
                logger.debug(f"Skipping rows {i}..{j - 1}: {e}")
                continue
            a_error, c_error = window_errors(result, A_ref, c_ref)
            score = max(a_error / a_tolerance, c_error / c_tolerance)
            key = (round(score, 6), -(j - i), i)
            if best_key is None or key < best_key:
                best_key = key
                best = WindowMatch(
                    first=start + i,
                    last=start + j - 1,
                    a_error=a_error,
                    c_error=c_error,
                    score=score,
                    result=result,
                )

    if best is None:
        raise TooShortError(f"no window of at least {min_length} rows could be fitted")
    logger.info(
        f"🔎 Best window {best.first}..{best.last}: "
        f"A error {best.a_error:.3g}, c error {best.c_error:.1%}"
    )
    return best
