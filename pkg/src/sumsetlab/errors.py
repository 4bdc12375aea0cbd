"""Exception hierarchy. Each class carries the CLI exit code it maps to."""


class SumsetError(Exception):
    exit_code = 1


class PreconditionError(SumsetError, ValueError):
    """An operation was called outside its domain."""

    exit_code = 2


class EmptySetError(PreconditionError):
    pass


class DuplicateElement(PreconditionError):
    pass


class SumsetOverflowError(PreconditionError, OverflowError):
    """A value left the signed 64-bit range in a module that uses checked arithmetic."""


class DimensionMismatch(PreconditionError):
    pass


class NoCompressibleGap(PreconditionError):
    pass


class ShortFormViolation(PreconditionError):
    pass


class UnsafeReduction(PreconditionError):
    pass


class NoPrimeInInterval(PreconditionError):
    pass


class ParseError(PreconditionError):
    pass


class BudgetExceeded(SumsetError):
    exit_code = 3


class SelfCheckFailure(SumsetError):
    """An internal invariant (e.g. sumset size preservation) did not hold."""

    exit_code = 4
