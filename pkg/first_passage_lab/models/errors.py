"""Exceptions raised by the first passage toolkit."""
from typing import Optional


class FirstPassageError(Exception):
    """Base exception for every error raised by this package."""
    pass


class InvalidWord(FirstPassageError):
    """Raised when a word cannot be parsed or violates its alphabet."""
    pass


class MismatchedAlphabet(FirstPassageError):
    """Raised when two words over different alphabets are compared."""
    pass


class HorizonTooSmall(FirstPassageError):
    """Raised when a series is requested with a horizon below 2k."""
    pass


class HorizonExhausted(FirstPassageError):
    """Raised when a crossing cannot be found or certified within the horizon.

    The attempted horizon is kept on the exception so callers can retry
    with a larger one.
    """

    def __init__(self, message: str, horizon: int):
        super().__init__(message)
        self.horizon = horizon


class TooLarge(FirstPassageError):
    """Raised when exhaustive enumeration would exceed the size guard."""
    pass


class InvariantFalsified(FirstPassageError):
    """Raised when a proven invariant does not hold on computed data."""

    def __init__(self, message: str, check: Optional[str] = None):
        super().__init__(message)
        self.check = check


class UsageError(FirstPassageError):
    """Raised when command line flags fail validation."""
    pass
