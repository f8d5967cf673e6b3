"""
Diagnostics shared by the CLI and the language server.
"""

from dataclasses import dataclass

from qrunes.core.exceptions import QRunesError
from qrunes.schemas.diagnostic import DiagnosticRecord, DiagnosticSeverity
from qrunes.services.frontend.tokens import SourceSpan

Severity = DiagnosticSeverity


@dataclass(frozen=True)
class Diagnostic:
    """A coded, located error or warning."""

    severity: Severity
    code: str
    message: str
    span: SourceSpan

    @property
    def is_error(self) -> bool:
        return self.severity == Severity.ERROR

    @classmethod
    def error(cls, code: str, message: str, span: SourceSpan) -> "Diagnostic":
        return cls(Severity.ERROR, code, message, span)

    @classmethod
    def warning(cls, code: str, message: str, span: SourceSpan) -> "Diagnostic":
        return cls(Severity.WARNING, code, message, span)

    @classmethod
    def from_error(cls, exc: QRunesError, fallback: SourceSpan) -> "Diagnostic":
        """Wrap a span-carrying toolchain error; ``fallback`` covers span-less ones."""
        return cls(Severity.ERROR, exc.code, exc.message, exc.span or fallback)

    def to_record(self) -> DiagnosticRecord:
        return DiagnosticRecord(
            code=self.code,
            severity=self.severity,
            message=self.message,
            line=self.span.line,
            column=self.span.column,
            end_line=self.span.end_line,
            end_column=self.span.end_column,
        )


def sort_diagnostics(diagnostics: list[Diagnostic]) -> list[Diagnostic]:
    """Stable order: by start offset, then code."""
    return sorted(
        diagnostics, key=lambda d: (d.span.start, d.span.end, d.code, d.message)
    )


def has_errors(diagnostics: list[Diagnostic]) -> bool:
    return any(d.is_error for d in diagnostics)
