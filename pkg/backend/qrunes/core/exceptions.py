"""
Custom exceptions for the QRunes toolchain.

Provides structured error handling with stable diagnostic codes,
source spans where the failure maps to program text, and
``to_dict`` output for the JSON surfaces.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from qrunes.services.frontend.tokens import SourceSpan


class QRunesError(Exception):
    """Base exception for all toolchain errors."""

    def __init__(
        self,
        message: str,
        code: str = "UNKNOWN_ERROR",
        details: dict[str, Any] | None = None,
        span: SourceSpan | None = None,
    ) -> None:
        """
        Initialize the exception.

        Args:
            message: Human-readable error message
            code: Stable error code for programmatic handling
            details: Additional error details
            span: Source location the error refers to, if any
        """
        self.message = message
        self.code = code
        self.details = details or {}
        self.span = span
        super().__init__(self.message)

    def to_dict(self) -> dict[str, Any]:
        """Convert exception to dictionary for JSON output."""
        result: dict[str, Any] = {
            "code": self.code,
            "message": self.message,
            "details": self.details,
        }
        if self.span is not None:
            result["line"] = self.span.line
            result["column"] = self.span.column
        return result


# ===========================================
# Source Exceptions (frontend)
# ===========================================


class SourceError(QRunesError):
    """Base exception for errors tied to a source location."""

    pass


class LexError(SourceError):
    """Raised on an unrecognized character or an unterminated construct."""

    def __init__(self, span: SourceSpan, message: str) -> None:
        super().__init__(message=message, code="E001", span=span)


class ParseError(SourceError):
    """Raised when the token stream does not match the grammar."""

    def __init__(
        self,
        span: SourceSpan,
        expected: str,
        found: str,
        message: str | None = None,
    ) -> None:
        self.expected = expected
        self.found = found
        super().__init__(
            message=message or f"expected {expected}, found {found}",
            code="E002",
            details={"expected": expected, "found": found},
            span=span,
        )


class CompilationFailedError(QRunesError):
    """Raised when a pipeline stage produced error diagnostics."""

    def __init__(self, diagnostics: list[dict[str, Any]]) -> None:
        super().__init__(
            message=f"Compilation failed with {len(diagnostics)} error(s)",
            code="COMPILATION_FAILED",
            details={"diagnostics": diagnostics},
        )


# ===========================================
# Elaboration Exceptions (qir)
# ===========================================


class ElaborationError(SourceError):
    """Base exception for compile-time evaluation failures."""

    pass


class MeasureAllSizeError(ElaborationError):
    """Raised when MeasureAll gets a qvec and a cvec of different sizes."""

    def __init__(self, span: SourceSpan | None, n_qubits: int, n_cbits: int) -> None:
        super().__init__(
            message="Qubits and cbits must have same sizes",
            code="E240",
            details={"qubits": n_qubits, "cbits": n_cbits},
            span=span,
        )


class UnrollBudgetError(ElaborationError):
    """Raised when elaboration executes more statements than allowed."""

    def __init__(self, span: SourceSpan | None, limit: int) -> None:
        super().__init__(
            message=f"Unroll budget of {limit} statements exceeded",
            code="E241",
            details={"max_unroll": limit},
            span=span,
        )


class RecursionCycleError(ElaborationError):
    """Raised when a function call re-enters a function on the call stack."""

    def __init__(self, span: SourceSpan | None, cycle: list[str]) -> None:
        super().__init__(
            message=f"Recursive call cycle: {' -> '.join(cycle)}",
            code="E242",
            details={"cycle": cycle},
            span=span,
        )


class HostConstructError(ElaborationError):
    """Raised when host-language text reaches the IR path."""

    def __init__(self, span: SourceSpan | None) -> None:
        super().__init__(
            message="host declarations and blocks cannot be elaborated to IR",
            code="E243",
            span=span,
        )


class RuntimeValueError(ElaborationError):
    """Raised when a run-time value appears where a constant is required."""

    def __init__(self, span: SourceSpan | None, what: str) -> None:
        super().__init__(
            message=f"{what} must be known at compile time",
            code="E244",
            span=span,
        )


class NonIntegralValueError(ElaborationError):
    """Raised when a fractional value would be folded into a classical register."""

    def __init__(self, span: SourceSpan | None, value: float) -> None:
        super().__init__(
            message=f"{value} is not an integer; classical expressions "
            "operate on 64-bit integers",
            code="E244",
            span=span,
            details={"value": value},
        )


class BindingError(ElaborationError):
    """Raised when entry arguments do not match the entry signature."""

    def __init__(self, message: str, entry: str) -> None:
        super().__init__(message=message, code="E245", details={"entry": entry})


class DivisionByZeroError(ElaborationError):
    """Raised by compile-time evaluation of ``x / 0`` or ``x % 0``."""

    def __init__(self, span: SourceSpan | None) -> None:
        super().__init__(
            message="division by zero in compile-time expression",
            code="E246",
            span=span,
        )


class UnboundNameError(ElaborationError):
    """Raised when evaluation meets a name with no binding."""

    def __init__(self, span: SourceSpan | None, name: str) -> None:
        super().__init__(
            message=f"name '{name}' has no binding during elaboration",
            code="E247",
            details={"name": name},
            span=span,
        )


class IndexRangeError(ElaborationError):
    """Raised when a compile-time index or slice leaves its vector."""

    def __init__(self, span: SourceSpan | None, index: str, size: int) -> None:
        super().__init__(
            message=f"index {index} out of range for vector of size {size}",
            code="E248",
            details={"index": index, "size": size},
            span=span,
        )


# ===========================================
# Simulation Exceptions
# ===========================================


class SimulationError(QRunesError):
    """Base exception for statevector execution failures."""

    pass


class IndexOutOfRangeError(SimulationError):
    """Raised when a node addresses a qubit or register that does not exist."""

    def __init__(self, kind: str, index: int, size: int) -> None:
        super().__init__(
            message=f"{kind} index {index} out of range (size {size})",
            code="E301",
            details={"kind": kind, "index": index, "size": size},
        )


class DuplicateTargetError(SimulationError):
    """Raised when a multi-qubit gate names the same qubit twice."""

    def __init__(self, gate: str, targets: tuple[int, ...]) -> None:
        super().__init__(
            message=f"{gate} targets must be distinct, got {list(targets)}",
            code="E302",
            details={"gate": gate, "targets": list(targets)},
        )


class QWhileLimitExceededError(SimulationError):
    """Raised when a qwhile loop keeps running past the iteration cap."""

    def __init__(self, span: SourceSpan | None, limit: int) -> None:
        super().__init__(
            message=f"qwhile exceeded {limit} iterations",
            code="E303",
            details={"max_qwhile_iters": limit},
            span=span,
        )


class RuntimeDivisionByZeroError(SimulationError):
    """Raised when a classical expression divides by zero during a shot."""

    def __init__(self) -> None:
        super().__init__(
            message="division by zero in classical expression",
            code="E304",
        )


class QubitLimitError(SimulationError):
    """Raised when a program needs more qubits than the simulator allows."""

    def __init__(self, requested: int, limit: int) -> None:
        super().__init__(
            message=f"program needs {requested} qubits, limit is {limit}",
            code="E305",
            details={"requested": requested, "limit": limit},
        )


# ===========================================
# Code Generation Exceptions
# ===========================================


class CodegenError(QRunesError):
    """Base exception for transpilation errors."""

    pass


class UnsupportedConstructError(CodegenError):
    """Raised when a target profile lacks an idiom for a construct."""

    def __init__(self, span: SourceSpan | None, construct: str, profile: str) -> None:
        super().__init__(
            message=f"profile '{profile}' has no idiom for {construct}",
            code="UNSUPPORTED_CONSTRUCT",
            details={"construct": construct, "profile": profile},
            span=span,
        )


class UnknownProfileError(CodegenError):
    """Raised when a target name matches no known profile."""

    def __init__(self, name: str, available: list[str]) -> None:
        super().__init__(
            message=(
                f"Unknown target profile '{name}'. "
                f"Available: {', '.join(available)}"
            ),
            code="UNKNOWN_PROFILE",
            details={"name": name, "available": available},
        )


class ProfileLoadError(CodegenError):
    """Raised when a user profile file cannot be read or validated."""

    def __init__(self, path: str, reason: str) -> None:
        super().__init__(
            message=f"Invalid profile file {path}: {reason}",
            code="INVALID_PROFILE",
            details={"path": path, "reason": reason},
        )


# ===========================================
# Configuration Exceptions
# ===========================================


class ConfigurationError(QRunesError):
    """Base exception for invalid user configuration."""

    pass


class RunConfigError(ConfigurationError):
    """Raised when a run configuration document fails validation."""

    def __init__(self, reason: str, errors: list[dict[str, Any]] | None = None) -> None:
        super().__init__(
            message=f"Invalid run configuration: {reason}",
            code="INVALID_RUN_CONFIG",
            details={"errors": errors or []},
        )


class SourceFileError(ConfigurationError):
    """Raised when an input or output file cannot be used."""

    def __init__(self, path: str, reason: str) -> None:
        super().__init__(
            message=f"{path}: {reason}",
            code="FILE_ERROR",
            details={"path": path, "reason": reason},
        )
