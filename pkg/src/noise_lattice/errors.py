"""Exception types shared across the library."""


class NoiseLatticeError(Exception):
    """Base class for errors raised by this library."""


class CapacityError(NoiseLatticeError):
    """A construction would exceed the configured size guard."""


class DomainMismatchError(NoiseLatticeError):
    """Operands live on different probability spaces."""


class PreconditionError(NoiseLatticeError):
    """An operation's precondition is violated."""


class UnsupportedSequenceError(NoiseLatticeError):
    """A symbolic sequence descriptor is outside the supported family."""


class ConsistencyError(NoiseLatticeError):
    """Two independent computations of the same quantity disagree."""
