"""
Toolchain configuration using Pydantic Settings.

Loads configuration from ``QRUNES_``-prefixed environment variables
(or a ``.env`` file) with defaults suited to desk-scale simulation.
"""

from pathlib import Path

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

# Find .env file relative to this config file
_env_file = Path(__file__).parent.parent.parent / ".env"


class Settings(BaseSettings):
    """Toolchain settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="QRUNES_",
        env_file=str(_env_file),
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # ===========================================
    # Application Settings
    # ===========================================
    app_name: str = Field(default="QRunes Toolchain")
    app_version: str = Field(default="0.1.0")
    debug: bool = Field(default=False)
    log_level: str = Field(default="WARNING")

    # ===========================================
    # Elaboration Settings
    # ===========================================
    max_unroll: int = Field(default=1_000_000)  # statements per elaboration

    # ===========================================
    # Simulator Settings
    # ===========================================
    max_qubits: int = Field(default=24)
    max_qwhile_iters: int = Field(default=100_000)
    default_shots: int = Field(default=1000)
    default_seed: int = Field(default=0)
    sim_workers: int = Field(default=1)

    # ===========================================
    # Code Generation Settings
    # ===========================================
    profile_dir: Path | None = Field(default=None)

    # ===========================================
    # Language Server Settings
    # ===========================================
    lsp_name: str = Field(default="qrunes-lsp")

    # ===========================================
    # Validators
    # ===========================================
    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Validate log level is a valid Python logging level."""
        valid_levels = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        if v.upper() not in valid_levels:
            raise ValueError(f"log_level must be one of {valid_levels}")
        return v.upper()

    @field_validator(
        "max_unroll", "max_qubits", "max_qwhile_iters", "default_shots", "sim_workers"
    )
    @classmethod
    def validate_positive(cls, v: int) -> int:
        """Limits and counts must be positive."""
        if v < 1:
            raise ValueError("value must be a positive integer")
        return v

    @field_validator("max_qubits")
    @classmethod
    def validate_qubit_cap(cls, v: int) -> int:
        """Statevectors above 24 qubits do not fit on a desk machine."""
        if v > 24:
            raise ValueError("max_qubits must not exceed 24")
        return v


def get_settings() -> Settings:
    """
    Get settings instance.

    Creates fresh instance to pick up environment changes.
    """
    return Settings()


# Convenience instance for direct imports
settings = get_settings()
