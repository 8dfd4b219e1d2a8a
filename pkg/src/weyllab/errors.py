"""Exception types shared across the package."""


class WeylLabError(Exception):
    """Base class for all package-specific errors."""


class DomainError(WeylLabError, ValueError):
    """An argument is outside the mathematical domain of the operation."""


class DegenerateInput(WeylLabError, ValueError):
    """Input is structurally unusable (too few points, nonpositive values)."""


class BudgetExceeded(WeylLabError, RuntimeError):
    """The requested computation exceeds the configured work or memory budget."""


class PrecisionError(WeylLabError, ArithmeticError):
    """An exact integer ceiling could not be certified at any tried precision."""
