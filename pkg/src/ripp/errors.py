"""Exception hierarchy."""


class RippError(Exception):
    """Base class for all package errors."""


class InvalidProblem(RippError, ValueError):
    """A payment problem violates its ordering or sign constraints."""


class WealthNonPositive(RippError, ValueError):
    """Multiplicative dynamics need strictly positive wealth."""


class UnitsMismatch(RippError, TypeError):
    """Additive and multiplicative growth rates were compared."""


class UndefinedDiscount(RippError, ValueError):
    pass


class NonPositiveHorizon(RippError, ValueError):
    pass


class NoSignChange(RippError, ArithmeticError):
    """The root bracket could not be made to straddle a sign change."""


class MaxIterations(RippError, ArithmeticError):
    pass


class DegenerateTrajectory(RippError, ValueError):
    pass
