"""Exception hierarchy shared by the solver modules."""


class ParetoDescentError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(ParetoDescentError, ValueError):
    """A point or tangent lies outside the manifold's domain."""


class NumericError(ParetoDescentError, ArithmeticError):
    """Non-finite values, failed factorizations, or solver breakdown."""

    def __init__(self, message, iteration=None):
        if iteration is not None:
            message = f"iteration {iteration}: {message}"
        super().__init__(message)
        self.iteration = iteration


class UsageError(ParetoDescentError, ValueError):
    """Invalid arguments (wrong lengths, unknown keys, bad sizes)."""


class LineSearchFailure(NumericError):
    """No dyadic step satisfied the Armijo test within the halving budget."""
