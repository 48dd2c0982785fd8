"""
Command usage exceptions.
"""


class UsageError(Exception):
    """Raised when a command is invoked with invalid arguments."""

    pass


class UnknownOverrideError(UsageError):
    """Raised when an override key is not recognised."""

    def __init__(self, key: str, allowed: list[str]):
        self.key = key
        self.allowed = allowed
        super().__init__(
            f"Unknown override key '{key}'; allowed keys: {', '.join(sorted(allowed))}"
        )


class ScenarioNotFoundError(UsageError):
    """Raised when a scenario path or bundled name does not resolve to a file."""

    def __init__(self, reference: str):
        self.reference = reference
        super().__init__(f"Scenario '{reference}' not found")
