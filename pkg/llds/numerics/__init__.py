"""Dense linear solves and least squares."""

from llds.numerics.linalg import (
    PIVOT_TOLERANCE,
    as_matrix,
    as_vector,
    least_squares,
    solve_linear,
)

__all__ = [
    "PIVOT_TOLERANCE",
    "as_matrix",
    "as_vector",
    "least_squares",
    "solve_linear",
]
