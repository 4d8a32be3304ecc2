class DynBCError(Exception):
    """Base class for all errors raised by dynbc."""


class ParseError(DynBCError):
    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class DomainError(DynBCError, ValueError):
    """An argument is outside the domain an operation is defined on."""


class ConsistencyError(DynBCError):
    """Internal state and input disagree (e.g. a batch that was not normalized)."""
