"""Exception types shared across the package."""


class NotPrimePowerError(ValueError):
    """Raised when a field order is not a prime power."""


class UnsupportedFieldError(ValueError):
    """Raised for prime-power orders above the q <= 256 table cap."""


class DimensionMismatchError(ValueError):
    """Raised when operands disagree on (q, n) or on matrix dimensions."""


class SingularMatrixError(ValueError):
    """Raised by the linear solver when the system matrix is not invertible."""


class BudgetExceededError(RuntimeError):
    """Raised when an operation would exceed its configured memory/work budget."""


class MismatchedParametersError(ValueError):
    """Raised when a witness and a function table disagree on parameters."""


class FormatError(ValueError):
    """Raised when a witness or table file does not match the expected layout."""
