"""Utility Module"""

from .errors import (
    StructuralError, UnsupportedInputError, ConfigError, PrecisionError, InconclusiveError,
)
from .report import CheckResult, VerificationReport, run_check

__all__ = [
    "StructuralError",
    "UnsupportedInputError",
    "ConfigError",
    "PrecisionError",
    "InconclusiveError",
    "CheckResult",
    "VerificationReport",
    "run_check",
]
