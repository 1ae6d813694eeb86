"""Exception hierarchy for opuczeros."""


class OpuczError(Exception):
    """Base class for all library errors."""


class InvalidCoefficientError(OpuczError, ValueError):
    """Recurrence coefficients outside (-1, 1), non-real, or exhausted."""


class OutOfDomainError(OpuczError, ValueError):
    """Requested evaluation point is outside the formula's valid domain."""


class RootFindingError(OpuczError, RuntimeError):
    """Polynomial root extraction failed or produced off-circle roots."""


class QuadratureError(OpuczError, RuntimeError):
    """Adaptive quadrature did not converge to the requested tolerance."""
