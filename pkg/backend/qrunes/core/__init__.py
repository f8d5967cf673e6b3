"""
Core module - Configuration, logging, and exception handling.

This module provides the foundational components for the QRunes toolchain:
- Settings management via Pydantic
- Rich-based logging
- Custom exception hierarchy
"""

from qrunes.core.config import Settings, get_settings, settings
from qrunes.core.exceptions import (
    BindingError,
    CodegenError,
    CompilationFailedError,
    ConfigurationError,
    DivisionByZeroError,
    DuplicateTargetError,
    ElaborationError,
    HostConstructError,
    IndexOutOfRangeError,
    IndexRangeError,
    LexError,
    MeasureAllSizeError,
    NonIntegralValueError,
    ParseError,
    ProfileLoadError,
    QRunesError,
    QubitLimitError,
    QWhileLimitExceededError,
    RecursionCycleError,
    RunConfigError,
    RuntimeDivisionByZeroError,
    RuntimeValueError,
    SimulationError,
    SourceError,
    SourceFileError,
    UnboundNameError,
    UnknownProfileError,
    UnrollBudgetError,
    UnsupportedConstructError,
)
from qrunes.core.logger import console, get_logger, log_startup_info, logger

__all__ = [
    # Config
    "Settings",
    "settings",
    "get_settings",
    # Logger
    "logger",
    "get_logger",
    "console",
    "log_startup_info",
    # Exceptions
    "QRunesError",
    "SourceError",
    "LexError",
    "ParseError",
    "CompilationFailedError",
    "ElaborationError",
    "MeasureAllSizeError",
    "UnrollBudgetError",
    "RecursionCycleError",
    "HostConstructError",
    "RuntimeValueError",
    "NonIntegralValueError",
    "BindingError",
    "DivisionByZeroError",
    "UnboundNameError",
    "IndexRangeError",
    "SimulationError",
    "IndexOutOfRangeError",
    "DuplicateTargetError",
    "QWhileLimitExceededError",
    "RuntimeDivisionByZeroError",
    "QubitLimitError",
    "CodegenError",
    "UnsupportedConstructError",
    "UnknownProfileError",
    "ProfileLoadError",
    "ConfigurationError",
    "RunConfigError",
    "SourceFileError",
]
