"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class NumericError(ArithmeticError):
    """An iterative method failed or produced unusable values."""


class UsageError(ValueError):
    """Bad command-line or API usage (unknown id, exhausted budget, ...)."""
