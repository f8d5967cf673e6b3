"""
Simulation result schemas.

The JSON document printed by ``qrunes run``.
"""

from pydantic import BaseModel, Field


class RegisterStats(BaseModel):
    """Final value statistics of one register over the completed shots."""

    mean: float = Field(..., description="Mean final value")
    min: int = Field(..., description="Smallest final value")
    max: int = Field(..., description="Largest final value")


class ShotFailure(BaseModel):
    """Shots aborted by the same run-time error."""

    code: str = Field(..., description="Error code, e.g. E304")
    message: str = Field(..., description="Error message")
    shots: int = Field(..., ge=1, description="Number of shots it aborted")
    first_shot: int = Field(..., ge=0, description="Index of the first such shot")


class SimulationReport(BaseModel):
    """Histogram and register statistics of a multi-shot run."""

    histogram: dict[str, int] = Field(
        default_factory=dict,
        description="Final bitstring (last register first) -> completed shots",
    )
    registers: dict[str, RegisterStats] = Field(
        default_factory=dict,
        description="Register name -> statistics over completed shots",
    )
    shots: int = Field(..., ge=1, description="Number of shots executed")
    seed: int = Field(..., description="Seed the run was derived from")
    failures: list[ShotFailure] = Field(
        default_factory=list,
        description="Run-time errors that aborted individual shots",
    )

    class Config:
        """Pydantic model configuration."""

        json_schema_extra = {
            "example": {
                "histogram": {"00": 503, "11": 497},
                "registers": {
                    "c[0]": {"mean": 0.497, "min": 0, "max": 1},
                    "c[1]": {"mean": 0.497, "min": 0, "max": 1},
                },
                "shots": 1000,
                "seed": 42,
                "failures": [],
            }
        }
