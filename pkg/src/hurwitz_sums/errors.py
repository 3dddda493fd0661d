"""Exception types shared across the package."""


class HurwitzSumsError(Exception):
    """Base class for every error raised by this package."""


class UsageError(HurwitzSumsError, ValueError):
    """An argument is outside the domain of the operation."""


class PrecisionError(HurwitzSumsError, IndexError):
    """A coefficient was requested beyond the known precision of a series or table."""


class TableFormatError(HurwitzSumsError, ValueError):
    """A persisted class-number table could not be parsed."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
