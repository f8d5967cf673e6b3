"""
Semantic analysis: types, scopes, builtins and diagnostics.
"""

from qrunes.services.semantics.analyzer import (
    FunctionInfo,
    Reference,
    TypedAst,
    analyze,
)
from qrunes.services.semantics.builtins import BUILTINS, Builtin, lookup_builtin
from qrunes.services.semantics.diagnostics import (
    Diagnostic,
    Severity,
    has_errors,
    sort_diagnostics,
)
from qrunes.services.semantics.scope import Scope, Symbol, SymbolKind
from qrunes.services.semantics.types import SemType, TypeFamily, TypeKind

__all__ = [
    "analyze",
    "TypedAst",
    "FunctionInfo",
    "Reference",
    "Builtin",
    "BUILTINS",
    "lookup_builtin",
    "Diagnostic",
    "Severity",
    "has_errors",
    "sort_diagnostics",
    "Scope",
    "Symbol",
    "SymbolKind",
    "SemType",
    "TypeFamily",
    "TypeKind",
]
