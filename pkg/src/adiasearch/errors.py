"""Exception types shared across the package."""


class AdiaSearchError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(AdiaSearchError, ValueError):
    """An argument lies outside the domain an operation is defined on."""


class QuadratureError(AdiaSearchError, RuntimeError):
    """An adaptive quadrature failed to converge to the requested tolerance."""


class IntegrationError(AdiaSearchError, RuntimeError):
    """ODE integration gave up before reaching s = 1.

    Attributes:
        s_reached: last value of the evolution parameter the integrator
            reached before failing, or None if unknown.
    """

    def __init__(self, message: str, s_reached: float | None = None):
        super().__init__(message)
        self.s_reached = s_reached


class BracketError(AdiaSearchError, RuntimeError):
    """The run-time finder could not bracket the target success probability."""


class RangeError(AdiaSearchError, ValueError):
    """A requested value lies outside the range of an invertible function."""


class InsufficientDataError(AdiaSearchError, ValueError):
    """Too few data points for the requested fit or window."""
