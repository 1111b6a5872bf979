"""Exception hierarchy shared by the library and the CLI."""


class KummerError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 3


class UsageError(KummerError, ValueError):
    """Malformed call: mismatched series centres, arrays too short, bad flags."""

    exit_code = 1


class DomainError(KummerError, ValueError):
    """Parameters outside the region where a quantity is defined."""

    exit_code = 2


class NumericalError(KummerError, ArithmeticError):
    """A numerical procedure failed to reach its target accuracy."""

    exit_code = 3
