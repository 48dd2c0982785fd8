"""
Mapping of exceptions to process exit codes.
"""

from typing import Callable, Type

import numpy as np

from src.config.logging import get_logger
from src.domain.exceptions.numerical_error import NumericalError
from src.domain.exceptions.usage_error import UsageError
from src.domain.exceptions.validation_error import ValidationError

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3

# Domain families first: pydantic and JSON errors are ValueErrors too, but the
# loader has already translated them by the time they get here.
_EXIT_CODES: list[tuple[tuple[Type[Exception], ...], int, str]] = [
    ((UsageError,), EXIT_USAGE, "Usage error"),
    ((ValidationError,), EXIT_VALIDATION, "Validation error"),
    ((NumericalError,), EXIT_NUMERICAL, "Numerical error"),
    (
        (np.linalg.LinAlgError, FloatingPointError, ValueError),
        EXIT_NUMERICAL,
        "Numerical library error",
    ),
]


def handle_error(exc: Exception, echo: Callable[[str], None]) -> int:
    """Log the error, print a one-line diagnostic and return its exit code."""
    for families, code, title in _EXIT_CODES:
        if isinstance(exc, families):
            log = logger.warning if code == EXIT_USAGE else logger.error
            log(title, error=str(exc), type=type(exc).__name__)
            echo(f"error: {exc}")
            return code
    raise exc
