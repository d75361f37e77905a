"""
Exception hierarchy for the collocation solver.

Everything raised on purpose by the library derives from CollocationError so
the CLI can map failures to exit codes in one place.
"""

from typing import Optional


class CollocationError(Exception):
    """Base class for all solver errors."""


# ─────────────────────────────────────────────────────────────
# Expressions
# ─────────────────────────────────────────────────────────────

class ExpressionError(CollocationError):
    """Problem with a user-supplied expression of x."""


class ExprSyntaxError(ExpressionError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class UnknownIdentifierError(ExpressionError):
    def __init__(self, name: str, offset: int):
        super().__init__(f"Unknown identifier '{name}' at offset {offset}")
        self.name = name
        self.offset = offset


class DomainError(ExpressionError):
    """Evaluation left the domain of a function (or of its derivatives)."""

    def __init__(self, operation: str, x: Optional[float] = None):
        where = f" at x={x!r}" if x is not None else ""
        super().__init__(f"Domain error in {operation}{where}")
        self.operation = operation
        self.x = x


# ─────────────────────────────────────────────────────────────
# Discretization / linear algebra
# ─────────────────────────────────────────────────────────────

class GridError(CollocationError, ValueError):
    """Invalid collocation grid request."""


class DimensionError(CollocationError, ValueError):
    """Array or matrix shapes do not fit together."""


class QuadratureError(CollocationError):
    def __init__(self, message: str, achieved: float):
        super().__init__(f"{message} (achieved error estimate {achieved:.3e})")
        self.achieved = achieved


class FactorizationError(CollocationError):
    def __init__(self, message: str, pivot: int):
        super().__init__(f"{message} at pivot {pivot}")
        self.pivot = pivot


class NotPositiveDefiniteError(FactorizationError):
    def __init__(self, pivot: int):
        super().__init__("Matrix is not positive definite", pivot)


class SingularMatrixError(FactorizationError):
    def __init__(self, pivot: int):
        super().__init__("Matrix is numerically singular", pivot)
