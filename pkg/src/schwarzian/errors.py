"""Exception types shared across the package."""


class SchwarzianError(Exception):
    """Base class for all library errors."""


class DegenerateInput(SchwarzianError):
    """Input violates a precondition (repeated points, zero denominator, ...)."""


class NonConvergence(SchwarzianError):
    """An iterative routine did not converge within its iteration cap."""


class PoleTooHigh(SchwarzianError):
    """A pole of order > 2 (or > 3 at infinity) where at most that order is allowed."""


class ObstructionNonzero(SchwarzianError):
    """The resonant right-hand side of the series recursion does not vanish.

    The offending value is stored in ``value``; it is proportional to the
    banded determinant criterion.
    """

    def __init__(self, value):
        super().__init__(f"nonzero obstruction {value}")
        self.value = value


class NoSolutionFound(SchwarzianError):
    """No Newton restart converged to a fiber point."""
