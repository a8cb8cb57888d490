"""Exception types raised by the package.

Every error is a subclass of :class:`LivsicError`; the argument-validation
errors also subclass :class:`ValueError` so ordinary ``except ValueError``
handlers keep working.
"""


class LivsicError(Exception):
    """Base class for all package errors."""


class InvalidArgument(LivsicError, ValueError):
    pass


class UnsupportedPoleOrder(LivsicError, ValueError):
    pass


class NotInLD(LivsicError, ValueError):
    """A function has a pole outside the divisor, or a non-simple pole."""


class PoleOnDiagonal(LivsicError, ValueError):
    pass


class PoleAtDivisor(LivsicError, ValueError):
    pass


class RamifiedFiber(LivsicError, ValueError):
    pass


class SingularBasePlane(LivsicError, ValueError):
    pass


class TransversalityFailure(LivsicError):
    pass


class BasePointError(LivsicError, ValueError):
    pass


class DegenerateSpan(LivsicError, ValueError):
    pass


class NotNormalized(LivsicError, ValueError):
    pass


class NormalizationFailure(LivsicError):
    pass


class SectionNotReal(LivsicError, ValueError):
    pass


class UnknownExample(LivsicError, KeyError):
    pass


class NotHermitian(LivsicError, ValueError):
    pass


class Inconsistency(LivsicError):
    """Two independent computations that must agree did not."""
