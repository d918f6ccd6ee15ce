"""Exception types shared across the package."""


class SdsError(Exception):
    """Base class for all errors raised by sdscycle."""


class InvalidInput(SdsError, ValueError):
    """Malformed graph, rule, word or file content."""


class CapExceeded(SdsError):
    """A computation would exceed a configured size limit."""

    def __init__(self, what, size, cap):
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(f"cap exceeded: {what} is {size}, limit is {cap}")
