"""Exception hierarchy.

Two families: :class:`InvalidInput` for malformed or inconsistent data
(the CLI maps these to exit status 2) and :class:`NumericFailure` for
breakdowns of a numerical method on valid data (exit status 3).
"""


class CFiniteError(Exception):
    """Base class for every error raised by the package."""


class InvalidInput(CFiniteError, ValueError):
    pass


class NumericFailure(CFiniteError, ArithmeticError):
    pass


class ZeroTrailingCoefficient(InvalidInput):
    pass


class LengthMismatch(InvalidInput):
    pass


class NotSquare(InvalidInput):
    pass


class DuplicateRoot(InvalidInput):
    pass


class ZeroRoot(InvalidInput):
    pass


class MultiplicitySumMismatch(InvalidInput):
    pass


class PreconditionViolated(InvalidInput):
    pass


class Singular(NumericFailure):
    """A linear system has a (numerically) singular matrix."""


class SingularBasis(Singular):
    """The matrix of basis values on the chosen index set is unusable."""


class NoConvergence(NumericFailure):
    pass


class RangeOverflow(NumericFailure, OverflowError):
    pass


class RouteMismatch(NumericFailure):
    pass


class InconsistentSpectrum(NumericFailure):
    """The root spectrum does not reproduce the recurrence coefficients."""


class NoRecurrenceFound(NumericFailure):
    pass
