"""
Diagnostic record schema.

The one JSON shape shared by ``qrunes check`` and the language server.
"""

from enum import Enum

from pydantic import BaseModel, Field


class DiagnosticSeverity(str, Enum):
    """Severity of a diagnostic."""

    ERROR = "error"
    WARNING = "warning"


class DiagnosticRecord(BaseModel):
    """Serialized diagnostic with 1-based positions."""

    code: str = Field(
        ...,
        pattern=r"^[EW]\d{3}$",
        description="Stable diagnostic code",
    )
    severity: DiagnosticSeverity = Field(
        ...,
        description="error or warning",
    )
    message: str = Field(
        ...,
        description="Human-readable message",
    )
    line: int = Field(..., ge=1, description="Start line (1-based)")
    column: int = Field(..., ge=1, description="Start column (1-based)")
    end_line: int = Field(..., ge=1, description="End line (1-based)")
    end_column: int = Field(..., ge=1, description="End column (1-based)")

    class Config:
        """Pydantic model configuration."""

        use_enum_values = True
        json_schema_extra = {
            "example": {
                "code": "E201",
                "severity": "error",
                "message": "cannot bind classical value to assist-classical 'a'",
                "line": 4,
                "column": 5,
                "end_line": 4,
                "end_column": 16,
            }
        }
