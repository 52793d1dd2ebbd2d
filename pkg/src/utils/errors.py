"""
Error Types

Exceptions raised across the library. Verification reports map
InconclusiveError to the ``inconclusive`` verdict and every other error
to ``fail``.
"""

from typing import Optional


class StructuralError(ValueError):
    """Inputs do not fit together (rings, lengths, group tables, degrees)"""


class UnsupportedInputError(ValueError):
    """Input is well-formed but outside what the algorithms handle"""


class ConfigError(ValueError):
    """Job file could not be parsed or failed validation"""

    def __init__(self, message: str, line: Optional[int] = None,
                 column: Optional[int] = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column or 0}: {message}"
        super().__init__(message)


class PrecisionError(ArithmeticError):
    """Working precision is exhausted"""

    def __init__(self, message: str, required: Optional[int] = None):
        self.required = required
        if required is not None:
            message = f"{message} (required precision: {required})"
        super().__init__(message)


class InconclusiveError(RuntimeError):
    """A truncation or search bound was reached before a certificate was found"""

    def __init__(self, message: str, obstruction: Optional[object] = None):
        self.obstruction = obstruction
        super().__init__(message)
