"""Exception types shared across the package."""


class SwmError(Exception):
    """Base class for all errors raised by this package."""


class SingularSystemError(SwmError, ArithmeticError):
    """The sign system could not be solved reliably.

    Carries the system size and a 1-norm condition estimate so callers can
    report what went wrong.
    """

    def __init__(self, n, condition):
        self.n = n
        self.condition = condition
        super().__init__(
            f"sign system of size {n} is numerically singular "
            f"(condition estimate {condition:.3e})"
        )


class FormatError(SwmError, ValueError):
    """A file's content is malformed or in an unsupported format."""
