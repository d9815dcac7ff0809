"""Exception types shared across the package."""


class BottBasisError(Exception):
    """Base class for errors raised by this package."""


class UsageError(BottBasisError, ValueError):
    """A precondition on the inputs was violated."""


class UndefinedLVectorError(BottBasisError, ValueError):
    """The l-vector (or minimal exponent) of the zero section was requested."""
