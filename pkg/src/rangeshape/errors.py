"""Exception types raised across the package."""


class RangeShapeError(Exception):
    """Base class for all package errors."""


class InvalidMatrix(RangeShapeError, ValueError):
    pass


class NotHermitian(RangeShapeError, ValueError):
    pass


class ConvergenceFailure(RangeShapeError, RuntimeError):
    pass


class UnboundedPolar(RangeShapeError):
    """The polar set is unbounded because 0 is not interior to the input.

    ``constraints`` holds the half-planes ``a*x + b*y <= 1`` as an (m, 2)
    array of ``(a, b)`` rows, so callers can still work with the polar.
    """

    def __init__(self, message, constraints=None):
        super().__init__(message)
        self.constraints = constraints


class IllConditionedFit(RangeShapeError, RuntimeError):
    pass


class ScaleError(RangeShapeError, ArithmeticError):
    pass


class NotAnchored(RangeShapeError, ValueError):
    """Polynomial does not satisfy q(0, 0) > 0."""
