"""Exception hierarchy shared by all modules."""


class CyclodetError(Exception):
    """Base class for library errors."""


class ParameterError(CyclodetError, ValueError):
    """An argument violates a documented precondition."""


class IntegrityError(CyclodetError, ArithmeticError):
    """A result contradicts a proven identity; indicates a logic bug."""


class NonRationalError(CyclodetError, ValueError):
    """A cyclotomic integer was expected to be a rational integer but is not."""

    def __init__(self, coeffs, m):
        self.coeffs = tuple(coeffs)
        self.m = m
        nz = {i: c for i, c in enumerate(self.coeffs) if i and c}
        super().__init__(f"value in Z[zeta_{m}] is not rational; nonzero higher coefficients {nz}")


class PrecisionError(CyclodetError, ArithmeticError):
    """Numeric result could not be certified at the working precision."""
