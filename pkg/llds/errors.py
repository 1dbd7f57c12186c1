"""
Error types raised by llds.

Every error carries a ``code`` used by the CLI as its one-line diagnostic key.
None of them derive from ``ValueError``; pydantic validators re-raise them
unchanged rather than folding them into a ``ValidationError``.
"""


class LldsError(Exception):
    """Base class for all llds errors."""

    code = "error"


class SingularMatrixError(LldsError):
    """Raised when a linear solve meets a vanishing pivot (e.g. I - A not invertible)."""

    code = "singular-matrix"


class RankDeficientError(LldsError):
    """Raised when a least-squares design matrix lacks full column rank."""

    code = "rank-deficient"


class NonPositiveEntryError(LldsError):
    """Raised when a quantity that must be strictly positive is not."""

    code = "non-positive-entry"


class NonFiniteEntryError(LldsError):
    """Raised when a matrix or vector holds NaN or infinity."""

    code = "non-finite-entry"


class DimensionMismatchError(LldsError):
    """Raised when shapes of models, states, inputs or weights disagree."""

    code = "dimension-mismatch"


class MissingControlError(LldsError):
    """Raised when a controlled model is stepped without an input."""

    code = "missing-control"


class StateOverflowError(LldsError):
    """Raised when a log-state leaves the representable exponent range."""

    code = "overflow"


class TooShortError(LldsError):
    """Raised when a trajectory is too short to identify the requested parameters."""

    code = "too-short"


class InsufficientDataError(LldsError):
    """Raised when a noise estimate has no positive degrees of freedom."""

    code = "insufficient-data"


class InvalidWeightError(LldsError):
    """Raised when a control weight is not symmetric PSD (state) or PD (input)."""

    code = "invalid-weight"


class InfeasibleBoundsError(LldsError):
    """Raised when an input lower bound is not strictly below its upper bound."""

    code = "infeasible-bounds"


class IterationLimitError(LldsError):
    """Raised when the bounded control solver exhausts its iteration budget."""

    code = "iteration-limit"


class SeriesParseError(LldsError):
    """Raised when a series or model file cannot be parsed."""

    code = "parse-error"


class GapInTimeError(LldsError):
    """Raised when the step column of a series does not increase by exactly 1."""

    code = "gap-in-time"


class SeriesIOError(LldsError):
    """Raised when a file cannot be read or written."""

    code = "io-error"


class ConfigError(LldsError):
    """Raised when a configuration or problem file is malformed."""

    code = "config-error"
