"""
Pydantic schemas module.

Models for every document that crosses a process boundary: diagnostic
records, run configurations, simulation reports and target profiles.
"""

from qrunes.schemas.diagnostic import DiagnosticRecord, DiagnosticSeverity
from qrunes.schemas.profile import ProfileControlFlow, ProfileTypeMap, TargetProfile
from qrunes.schemas.results import RegisterStats, ShotFailure, SimulationReport
from qrunes.schemas.run_config import RunConfig

__all__ = [
    # Diagnostics
    "DiagnosticRecord",
    "DiagnosticSeverity",
    # Run configuration
    "RunConfig",
    # Results
    "RegisterStats",
    "SimulationReport",
    "ShotFailure",
    # Code generation
    "TargetProfile",
    "ProfileTypeMap",
    "ProfileControlFlow",
]
