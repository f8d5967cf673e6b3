"""
Run configuration schema.

The JSON document passed to ``qrunes run --config`` (and to
``qrunes compile --target qir``):

    {"entry": "Test", "args": {"q": 1, "c": 1, "temp": 1},
     "shots": 2000, "seed": 7, "max_qwhile_iters": 1000}

``shots`` and ``seed`` fall back to the QRUNES_DEFAULT_SHOTS and
QRUNES_DEFAULT_SEED settings.

``args`` maps each entry parameter to a size (qvec/cvec), 1 (qubit/cbit)
or a scalar value (int/double/bool). Unknown keys are rejected.
"""

from typing import Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator

from qrunes.core.config import get_settings

ArgValue = Union[bool, int, float]


class RunConfig(BaseModel):
    """Validated run configuration."""

    model_config = ConfigDict(
        extra="forbid",
        json_schema_extra={
            "example": {
                "entry": "bell",
                "args": {"q": 2, "c": 2},
                "shots": 1000,
                "seed": 42,
            }
        },
    )

    entry: str = Field(
        ...,
        min_length=1,
        description="Name of the entry function",
    )
    args: dict[str, ArgValue] = Field(
        default_factory=dict,
        description="Parameter name -> size, 1, or scalar value",
    )
    shots: int = Field(
        default_factory=lambda: get_settings().default_shots,
        ge=1,
        description="Number of independent executions",
    )
    seed: int = Field(
        default_factory=lambda: get_settings().default_seed,
        ge=-(2**63),
        lt=2**64,
        description="Seed for the per-shot random streams",
    )
    max_qwhile_iters: Optional[int] = Field(
        default=None,
        ge=1,
        description="Iteration cap per qwhile loop (default from settings)",
    )

    @field_validator("entry")
    @classmethod
    def validate_entry(cls, v: str) -> str:
        """Entry must look like a QRunes identifier."""
        if not (v[0].isalpha() or v[0] == "_") or not all(
            ch.isalnum() or ch == "_" for ch in v
        ):
            raise ValueError(f"'{v}' is not a valid function name")
        return v
