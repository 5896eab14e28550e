"""Exception types raised by the toolkit."""


class ConvexityRadiusError(Exception):
    """Base class for every error raised by this package."""


class DivisionByNonUnit(ConvexityRadiusError, ZeroDivisionError):
    """Series division by a series whose constant term is (numerically) zero."""


class NotUnit(ConvexityRadiusError, ValueError):
    """Series logarithm requested for a series whose constant term is not 1."""


class OutsideDisk(ConvexityRadiusError, ValueError):
    """Evaluation point does not lie in the open unit disk."""


class BadParameter(ConvexityRadiusError, ValueError):
    """A class or formula parameter is outside its admissible range."""


class CriticalPoint(ConvexityRadiusError, ValueError):
    """The derivative of a function vanishes where a quotient needs it."""

    def __init__(self, message, where=None):
        super().__init__(message)
        self.where = where


class ZeroOfG(ConvexityRadiusError, ValueError):
    """A function in the starlike factor vanishes away from the origin."""


class QuadratureNoConverge(ConvexityRadiusError, ArithmeticError):
    """Adaptive quadrature hit its depth cap before meeting the error target."""

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class NoPositiveRoot(ConvexityRadiusError, ValueError):
    """A quadratic has no positive real root."""


class EvaluationFailure(ConvexityRadiusError, ArithmeticError):
    """The convexity functional could not be evaluated on a circle."""

    def __init__(self, message, theta=None):
        super().__init__(message)
        self.theta = theta


class UncheckableClass(ConvexityRadiusError, ValueError):
    """Membership in the requested class has no finite sufficient test."""


class ScenarioError(ConvexityRadiusError, ValueError):
    """A scenario violates its structural invariants or cannot be parsed."""
