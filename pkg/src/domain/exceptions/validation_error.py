"""
Validation-related domain exceptions.
"""

from typing import Optional


class ValidationError(Exception):
    """Base exception for validation errors."""

    pass


class RequiredFieldError(ValidationError):
    """Raised when required field is missing."""

    def __init__(self, field_name: str):
        self.field_name = field_name
        super().__init__(f"Required field '{field_name}' is missing")


class InvalidFieldError(ValidationError):
    """Raised when a field violates its invariant."""

    def __init__(self, field_name: str, message: str):
        self.field_name = field_name
        self.message = message
        super().__init__(f"Field '{field_name}' is invalid: {message}")


class ConfigParseError(ValidationError):
    """Raised when a configuration document cannot be parsed."""

    def __init__(self, source: str, line: int, column: int, message: str):
        self.source = source
        self.line = line
        self.column = column
        super().__init__(f"{source}:{line}:{column}: {message}")


class PhysicalInconsistencyError(ValidationError):
    """Raised when inertial parameters do not describe a physical body."""

    def __init__(self, message: str, min_eigenvalue: Optional[float] = None):
        self.min_eigenvalue = min_eigenvalue
        if min_eigenvalue is not None:
            message = f"{message} (smallest eigenvalue {min_eigenvalue:.3e})"
        super().__init__(message)


class PerturbationError(ValidationError):
    """Raised when a perturbed model stays physically inconsistent after retries."""

    def __init__(self, body: int, attempts: int):
        self.body = body
        self.attempts = attempts
        super().__init__(
            f"Perturbed inertia of body {body} is not physically consistent "
            f"after {attempts} draws"
        )
