"""
Scopes and symbols.

Lookup walks outward through parent scopes. Scopes opened by ``qif`` and
``qwhile`` bodies are barriers: once a lookup leaves a barrier scope it
no longer sees assist-classical symbols, while quantum and classical
symbols stay visible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from qrunes.services.frontend.tokens import SourceSpan
from qrunes.services.semantics.types import SemType


class SymbolKind(str, Enum):
    """Where a symbol comes from."""

    PARAM = "param"
    LET = "let-binding"
    TOP_CONST = "top-const"
    FUNCTION = "function"
    BUILTIN = "builtin"


@dataclass
class Symbol:
    """A named entity visible in some scope."""

    name: str
    sem_type: SemType | None
    kind: SymbolKind
    def_span: SourceSpan | None = None
    owner: str | None = None  # enclosing function for params and locals
    signature: str | None = None  # functions only

    @property
    def is_assist(self) -> bool:
        return self.sem_type is not None and self.sem_type.is_assist

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {
            "name": self.name,
            "type": self.sem_type.describe() if self.sem_type else None,
            "kind": self.kind.value,
            "owner": self.owner,
        }


@dataclass
class Resolution:
    """Result of a lookup: the symbol found, or the one the barrier hid."""

    symbol: Symbol | None = None
    blocked: Symbol | None = None


@dataclass
class Scope:
    """One lexical scope."""

    parent: Scope | None = None
    barrier: bool = False
    span: SourceSpan | None = None
    symbols: dict[str, Symbol] = field(default_factory=dict)

    def child(self, span: SourceSpan | None = None, barrier: bool = False) -> Scope:
        return Scope(parent=self, barrier=barrier, span=span)

    def define(self, symbol: Symbol) -> Symbol | None:
        """Add a symbol; returns the one it replaced in this same scope."""
        previous = self.symbols.get(symbol.name)
        self.symbols[symbol.name] = symbol
        return previous

    def resolve(self, name: str) -> Resolution:
        blocked: Symbol | None = None
        crossed = False
        scope: Scope | None = self
        while scope is not None:
            symbol = scope.symbols.get(name)
            if symbol is not None:
                if crossed and symbol.is_assist:
                    blocked = blocked or symbol
                else:
                    return Resolution(symbol=symbol)
            crossed = crossed or scope.barrier
            scope = scope.parent
        return Resolution(blocked=blocked)

    def visible_symbols(self, offset: int | None = None) -> list[Symbol]:
        """
        Every symbol a lookup from this scope would find.

        Args:
            offset: When given, locals and constants bound after this offset are hidden

        Returns:
            Symbols ordered innermost scope first
        """
        seen: set[str] = set()
        visible: list[Symbol] = []
        crossed = False
        scope: Scope | None = self
        while scope is not None:
            for symbol in scope.symbols.values():
                if symbol.name in seen:
                    continue
                if crossed and symbol.is_assist:
                    continue
                if (
                    offset is not None
                    and symbol.kind in (SymbolKind.LET, SymbolKind.TOP_CONST)
                    and symbol.def_span is not None
                    and symbol.def_span.start > offset
                ):
                    continue
                seen.add(symbol.name)
                visible.append(symbol)
            crossed = crossed or scope.barrier
            scope = scope.parent
        return visible
