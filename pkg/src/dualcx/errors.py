"""Exception types shared across the package."""


class DualcxError(Exception):
    """Base class for all package errors."""


class ParseError(DualcxError):
    """Malformed input text. Carries 1-based line/column when known."""

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class ValidationError(DualcxError):
    """A value failed validation; ``violations`` holds the findings."""

    def __init__(self, message, violations=()):
        self.violations = list(violations)
        super().__init__(message)


class UnsupportedInput(DualcxError):
    pass
