class NthPrimeError(Exception):
    """Base class for errors raised by this package."""


class DomainError(NthPrimeError, ValueError):
    """Argument outside the mathematical domain of the operation."""


class CapacityError(NthPrimeError):
    """Request exceeds the configured memory or time budget."""


class PreconditionError(NthPrimeError, ValueError):
    """Caller-supplied data violates a documented precondition."""


class PrecisionError(NthPrimeError):
    """Requested accuracy cannot be delivered."""


class PiOverflowError(NthPrimeError, OverflowError):
    """Argument beyond the range the prime-counting method supports."""
