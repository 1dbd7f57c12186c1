"""
Dense linear algebra used by identification, control and fixed points.

Matrices and vectors are plain float64 numpy arrays (row-major, C order).
``as_matrix`` / ``as_vector`` are the constructors: they copy, check shape and
finiteness and return read-only arrays.
"""

import warnings

import numpy as np
from scipy import linalg

from llds.errors import (
    DimensionMismatchError,
    NonFiniteEntryError,
    RankDeficientError,
    SingularMatrixError,
)

# Relative pivot threshold shared by solve_linear and least_squares.
PIVOT_TOLERANCE = 1e-12


def _frozen(array: np.ndarray) -> np.ndarray:
    array.flags.writeable = False
    return array


def as_matrix(data, name: str = "matrix") -> np.ndarray:
    """Validate ``data`` as a finite 2-D matrix and return a read-only copy."""
    array = np.array(data, dtype=np.float64, order="C")
    if array.ndim != 2:
        raise DimensionMismatchError(f"{name} must be 2-D, got shape {array.shape}")
    if not np.all(np.isfinite(array)):
        raise NonFiniteEntryError(f"{name} contains NaN or infinite entries")
    return _frozen(array)


def as_vector(data, name: str = "vector") -> np.ndarray:
    """Validate ``data`` as a finite 1-D vector and return a read-only copy."""
    array = np.array(data, dtype=np.float64)
    if array.ndim == 0:
        array = array.reshape(1)
    if array.ndim != 1:
        raise DimensionMismatchError(f"{name} must be 1-D, got shape {array.shape}")
    if not np.all(np.isfinite(array)):
        raise NonFiniteEntryError(f"{name} contains NaN or infinite entries")
    return _frozen(array)


def solve_linear(
    M: np.ndarray, b: np.ndarray, tolerance: float = PIVOT_TOLERANCE
) -> np.ndarray:
    """
    Solve ``M x = b`` by LU factorization with partial pivoting.

    Args:
        M: square n×n matrix
        b: vector of dimension n
        tolerance: a pivot is treated as zero when its magnitude falls below
            ``tolerance`` times the first (largest initial) pivot magnitude

    Returns:
        Solution vector x of dimension n

    Raises:
        DimensionMismatchError: If M is not square or b does not match
        SingularMatrixError: If a pivot vanishes
    """
    M = as_matrix(M, "M")
    b = as_vector(b, "b")
    n, cols = M.shape
    if n != cols:
        raise DimensionMismatchError(f"M must be square, got {n}x{cols}")
    if b.shape[0] != n:
        raise DimensionMismatchError(f"b has dimension {b.shape[0]}, expected {n}")
    if n == 0:
        raise SingularMatrixError("matrix is empty")

    with warnings.catch_warnings():
        # scipy warns on exactly-zero pivots; the check below reports them.
        warnings.simplefilter("ignore", linalg.LinAlgWarning)
        lu, piv = linalg.lu_factor(M, check_finite=False)

    # partial pivoting makes |U[0, 0]| the largest entry of the first column
    scale = float(abs(lu[0, 0]))
    if scale == 0.0:
        raise SingularMatrixError("first column of the matrix is zero")

    pivots = np.abs(np.diag(lu))
    smallest = int(np.argmin(pivots))
    if pivots[smallest] < tolerance * scale:
        raise SingularMatrixError(
            f"pivot {smallest} has magnitude {pivots[smallest]:.3e} "
            f"(threshold {tolerance * scale:.3e})"
        )
    return _frozen(linalg.lu_solve((lu, piv), b, check_finite=False))


def least_squares(
    D: np.ndarray, Y: np.ndarray, tolerance: float = PIVOT_TOLERANCE
) -> np.ndarray:
    """
    Minimize ``||D W - Y||_F`` via column-pivoted Householder QR.

    ``Y`` may be a p×r matrix or a length-p vector; the result has the matching
    shape (q×r or length q).

    Raises:
        DimensionMismatchError: If row counts disagree
        RankDeficientError: If D has fewer rows than columns or a diagonal entry of
            R falls below ``tolerance`` times the leading one
    """
    D = as_matrix(D, "D")
    Y = np.asarray(Y, dtype=np.float64)
    vector_rhs = Y.ndim == 1
    Y = as_matrix(Y.reshape(-1, 1) if vector_rhs else Y, "Y")

    p, q = D.shape
    if Y.shape[0] != p:
        raise DimensionMismatchError(f"Y has {Y.shape[0]} rows, D has {p}")
    if p < q:
        raise RankDeficientError(f"{p} rows cannot determine {q} unknowns")

    Q, R, perm = linalg.qr(D, mode="economic", pivoting=True, check_finite=False)
    diagonal = np.abs(np.diag(R))
    lead = diagonal[0] if q else 0.0
    if lead == 0.0 or np.any(diagonal < tolerance * lead):
        rank = int(np.sum(diagonal >= tolerance * lead)) if lead else 0
        raise RankDeficientError(f"design matrix has rank {rank} < {q} columns")

    W_perm = linalg.solve_triangular(R, Q.T @ Y, check_finite=False)
    W = np.empty_like(W_perm)
    W[perm] = W_perm
    if vector_rhs:
        W = W[:, 0].copy()
    return _frozen(W)
