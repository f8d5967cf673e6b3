"""
Token and source-location types for the QRunes frontend.

Every token and AST node carries one ``SourceSpan``; ``LineIndex``
converts between character offsets and 1-based line/column pairs.
"""

from bisect import bisect_right
from dataclasses import dataclass
from enum import Enum
from typing import Any

KEYWORDS: frozenset[str] = frozenset(
    {"let", "host", "if", "else", "while", "for", "qif", "qelse", "qwhile"}
)

# Lexed as identifiers, classified by the parser and analyzer
TYPE_NAMES: frozenset[str] = frozenset(
    {"qubit", "qvec", "cbit", "cvec", "int", "double", "bool"}
)

BOOL_LITERALS: dict[str, bool] = {
    "true": True,
    "True": True,
    "false": False,
    "False": False,
}


class TokenKind(str, Enum):
    """Lexical category of a token."""

    KEYWORD = "keyword"
    IDENTIFIER = "identifier"
    INT = "int-literal"
    FLOAT = "float-literal"
    BOOL = "bool-literal"
    STRING = "string-literal"  # raw host-block and script payloads
    OPERATOR = "operator"
    PUNCTUATION = "punctuation"
    SECTION_MARKER = "section-marker"
    EOF = "eof"


@dataclass(frozen=True)
class SourceSpan:
    """Half-open character range with the 1-based position of both ends."""

    start: int
    end: int
    line: int
    column: int
    end_line: int
    end_column: int

    def __post_init__(self) -> None:
        if self.start > self.end:
            raise ValueError(f"span start {self.start} after end {self.end}")

    def cover(self, other: "SourceSpan") -> "SourceSpan":
        """Span from the start of ``self`` to the end of ``other``."""
        return SourceSpan(
            self.start,
            other.end,
            self.line,
            self.column,
            other.end_line,
            other.end_column,
        )

    def contains(self, offset: int) -> bool:
        """Whether ``offset`` lies inside the span (end inclusive, for cursors)."""
        return self.start <= offset <= self.end

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {
            "start": self.start,
            "end": self.end,
            "line": self.line,
            "column": self.column,
            "end_line": self.end_line,
            "end_column": self.end_column,
        }


class LineIndex:
    """Offset <-> (line, column) conversion for one source text."""

    def __init__(self, text: str) -> None:
        self.text = text
        self._line_starts = [0]
        for i, ch in enumerate(text):
            if ch == "\n":
                self._line_starts.append(i + 1)

    def position(self, offset: int) -> tuple[int, int]:
        """1-based (line, column) of a character offset."""
        line = bisect_right(self._line_starts, offset) - 1
        return line + 1, offset - self._line_starts[line] + 1

    def offset(self, line: int, column: int) -> int:
        """Character offset of a 1-based (line, column), clamped to the text."""
        if line < 1:
            return 0
        if line > len(self._line_starts):
            return len(self.text)
        start = self._line_starts[line - 1]
        if line < len(self._line_starts):
            line_end = self._line_starts[line] - 1
        else:
            line_end = len(self.text)
        return min(start + max(column, 1) - 1, line_end)

    def span(self, start: int, end: int) -> SourceSpan:
        """Build a span for ``text[start:end]``."""
        line, column = self.position(start)
        end_line, end_column = self.position(end)
        return SourceSpan(start, end, line, column, end_line, end_column)


@dataclass(frozen=True)
class Token:
    """A lexeme with its category and location."""

    kind: TokenKind
    lexeme: str
    span: SourceSpan

    def is_(self, kind: TokenKind, lexeme: str | None = None) -> bool:
        """Match on kind and, optionally, exact lexeme."""
        return self.kind == kind and (lexeme is None or self.lexeme == lexeme)

    def describe(self) -> str:
        """Short human description for error messages."""
        if self.kind == TokenKind.EOF:
            return "end of input"
        return f"'{self.lexeme}'"

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {
            "kind": self.kind.value,
            "lexeme": self.lexeme,
            "span": self.span.to_dict(),
        }
