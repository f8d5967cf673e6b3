"""
Toolchain services module.

Provides the orchestrator that runs the check, compile and run pipelines
shared by the command line and the language server.
"""

from qrunes.services.toolchain.orchestrator import (
    DEFAULT_TARGET,
    QIR_TARGET,
    CheckResult,
    Toolchain,
)

__all__ = [
    "Toolchain",
    "CheckResult",
    "DEFAULT_TARGET",
    "QIR_TARGET",
]
