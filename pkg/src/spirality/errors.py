"""Exception hierarchy and the diagnostic value type shared across modules."""

from dataclasses import dataclass


class SpiralityError(Exception):
    """Base class for domain errors raised by this package."""


class ParseError(SpiralityError):
    """A manifest file could not be parsed or violates the schema.

    ``line`` and ``column`` are set for syntax errors; schema errors carry
    the offending field path in the message instead.
    """

    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.line = line
        self.column = column

    def __str__(self):
        base = super().__str__()
        if self.line is not None:
            return "%s (line %d, column %d)" % (base, self.line, self.column)
        return base


ERROR = "error"
WARNING = "warning"


@dataclass(frozen=True)
class Diagnostic:
    """One validation finding. Diagnostics are values, not exceptions."""

    severity: str
    code: str
    message: str

    @property
    def is_error(self):
        return self.severity == ERROR

    def __str__(self):
        return "%s: %s: %s" % (self.severity, self.code, self.message)


def error(code, message):
    return Diagnostic(ERROR, code, message)


def warning(code, message):
    return Diagnostic(WARNING, code, message)
