"""Exception types shared across the package.

All derive from ValueError so callers that do not care about the fine
distinction can catch a single class. The CLI maps them onto exit codes.
"""


class DimensionError(ValueError):
    """Local dimension outside the supported range (d must be >= 2)."""


class ShapeError(ValueError):
    """Array argument with an incompatible shape."""


class DomainError(ValueError):
    """Input violates a mathematical precondition (normalization, Hermiticity, ...)."""


class CapacityError(ValueError):
    """Requested computation exceeds a hard enumeration or size limit."""


class NotBlockDiagonalError(ValueError):
    """Operator is not block diagonal in the expected grading."""

    def __init__(self, residual: float):
        self.residual = float(residual)
        super().__init__(
            f"operator is not block diagonal: off-block residual norm {self.residual:.3e}"
        )


class NoViolationError(ValueError):
    """Bell value does not exceed the classical bound; a noise threshold is undefined."""
