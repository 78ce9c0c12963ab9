"""Exception types shared across the package."""


class CicError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(CicError):
    """Invalid configuration value or combination."""


class IoError(CicError):
    """File cannot be read or written."""


class FormatError(CicError):
    """Malformed input file. Carries the offending location when known."""

    def __init__(self, message, row=None, column=None):
        super().__init__(message)
        self.row = row
        self.column = column


class EmptyError(CicError):
    """File contains no data rows."""


class DegenerateError(CicError):
    """Numerically degenerate input (constant column, zero-norm vector)."""


class ShortSegmentError(CicError):
    """A trajectory segment is too short for the requested embedding."""


class UnknownColumnError(CicError):
    """Requested variable label does not exist."""


class ShapeError(CicError):
    """Array dimensions do not match the declared contract."""


class DivergenceError(CicError):
    """Training loss became non-finite."""

    def __init__(self, message, epoch=None):
        super().__init__(message)
        self.epoch = epoch


class UnstableError(CicError):
    """Simulated trajectory escaped the unit interval despite retries."""


class SingularError(CicError):
    """Regression design matrix is rank deficient."""


class ShortSeriesError(CicError):
    """Time series too short for the requested analysis."""


class OneClassError(CicError):
    """ROC analysis needs both positive and negative labels."""


class RankError(CicError):
    """Covariance block is not invertible even after ridge regularization."""
