"""
Application settings using Pydantic BaseSettings.
"""

from pathlib import Path
from typing import Optional

from pydantic import field_validator
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Application settings."""

    # Application
    APP_NAME: str = "mgc"
    APP_VERSION: str = "0.1.0"
    ENVIRONMENT: str = "development"
    LOG_LEVEL: str = "INFO"

    # Outputs
    OUTPUT_DIR: Path = Path("out")
    BUNDLED_SCENARIO_DIR: Optional[Path] = None

    # Simulation
    WORKER_CONCURRENCY: int = 1
    PROGRESS_LOG_INTERVAL: float = 1.0  # simulated seconds

    @field_validator("ENVIRONMENT")
    @classmethod
    def validate_environment(cls, v: str) -> str:
        if v not in ["development", "staging", "production", "test"]:
            raise ValueError(
                "Environment must be one of: development, staging, production, test"
            )
        return v

    @field_validator("LOG_LEVEL")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        valid_levels = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        if v.upper() not in valid_levels:
            raise ValueError(f"Log level must be one of: {valid_levels}")
        return v.upper()

    @field_validator("WORKER_CONCURRENCY")
    @classmethod
    def validate_worker_concurrency(cls, v: int) -> int:
        if v < 1:
            raise ValueError("Worker concurrency must be at least 1")
        return v

    @field_validator("PROGRESS_LOG_INTERVAL")
    @classmethod
    def validate_progress_interval(cls, v: float) -> float:
        if v <= 0:
            raise ValueError("Progress log interval must be positive")
        return v

    model_config = {"env_file": ".env", "case_sensitive": True, "extra": "ignore"}


# Global settings instance
settings = Settings()
