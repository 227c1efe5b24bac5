"""Exception types shared across the package."""


class GammaDomainError(ValueError):
    """A parameter value falls outside the open interval (0, 1/4)."""


class GammaRangeError(IndexError):
    """An explicit parameter list is shorter than the requested index."""


class UnderflowError(ArithmeticError):
    """A log-scale value is too small to be represented in linear scale."""


class NumericalDomainError(ArithmeticError):
    """Accumulated rounding pushed a recurrence step out of its domain.

    ``partial`` holds the coefficient table computed up to (excluding) the
    failing index so the run can be inspected.
    """

    def __init__(self, index, difference, partial=None):
        self.index = index
        self.difference = difference
        self.partial = partial
        super().__init__(
            f"non-positive difference {difference!r} while computing a_{index}"
        )


class ConvergenceFailure(ArithmeticError):
    """The tridiagonal eigensolver exceeded its sweep budget."""

    def __init__(self, index, sweeps):
        self.index = index
        self.sweeps = sweeps
        super().__init__(f"eigenvalue {index} did not converge in {sweeps} sweeps")


class PreconditionError(ValueError):
    """A model does not satisfy the hypotheses of a diagnostic."""
