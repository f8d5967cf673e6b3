"""
QRunes lexer.

Turns source text into a list of tokens. Comments and whitespace are
skipped; the body of a ``host { ... }`` block and everything after the
``@script:`` marker are passed through as raw string-literal tokens.
"""

import re

from qrunes.core.exceptions import LexError
from qrunes.services.frontend.tokens import (
    BOOL_LITERALS,
    KEYWORDS,
    LineIndex,
    Token,
    TokenKind,
)

SECTION_MARKERS: frozenset[str] = frozenset(
    {"@settings:", "@qcode:", "@qcodes:", "@script:"}
)

# Longest operators first so "+=" wins over "+"
OPERATORS: tuple[str, ...] = (
    "+=", "-=", "*=", "==", "!=", "<=", ">=", "&&", "||",
    "+", "-", "*", "/", "%", "<", ">", "!", "=",
)  # fmt: skip

PUNCTUATION: frozenset[str] = frozenset("(){}[];,:")

_WHITESPACE = re.compile(r"\s+")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_FLOAT = re.compile(r"(?:\d+\.\d*|\.\d+)(?:[eE][+-]?\d+)?|\d+[eE][+-]?\d+")
_INT = re.compile(r"\d+")
_MARKER = re.compile(r"@[A-Za-z]+:")


class _Scanner:
    """Single-pass scanner over one source text."""

    def __init__(self, source: str) -> None:
        self.source = source
        self.index = LineIndex(source)
        self.pos = 0
        self.tokens: list[Token] = []
        self._after_host = False

    def _emit(self, kind: TokenKind, start: int, end: int) -> None:
        span = self.index.span(start, end)
        self.tokens.append(Token(kind, self.source[start:end], span))
        self.pos = end

    def _error(self, start: int, end: int, message: str) -> LexError:
        return LexError(self.index.span(start, end), message)

    def _skip_trivia(self) -> None:
        src = self.source
        while self.pos < len(src):
            ws = _WHITESPACE.match(src, self.pos)
            if ws:
                self.pos = ws.end()
                continue
            if src.startswith("//", self.pos):
                newline = src.find("\n", self.pos)
                self.pos = len(src) if newline < 0 else newline
                continue
            if src.startswith("/*", self.pos):
                close = src.find("*/", self.pos + 2)
                if close < 0:
                    raise self._error(self.pos, len(src), "unterminated block comment")
                self.pos = close + 2
                continue
            return

    def _host_body(self) -> None:
        """Capture ``{ ... }`` verbatim; brace balance is the only lexing done."""
        start = self.pos
        depth = 0
        for i in range(start, len(self.source)):
            ch = self.source[i]
            if ch == "{":
                depth += 1
            elif ch == "}":
                depth -= 1
                if depth == 0:
                    self._emit(TokenKind.STRING, start, i + 1)
                    return
        raise self._error(start, len(self.source), "unterminated host block")

    def scan(self) -> list[Token]:
        src = self.source
        while True:
            self._skip_trivia()
            if self.pos >= len(src):
                return self.tokens
            start = self.pos
            ch = src[start]

            if self._after_host:
                self._after_host = False
                if ch == "{":
                    self._host_body()
                    continue

            if ch == "@":
                marker = _MARKER.match(src, start)
                if not marker or marker.group() not in SECTION_MARKERS:
                    raise self._error(start, start + 1, "unknown section marker")
                self._emit(TokenKind.SECTION_MARKER, start, marker.end())
                if marker.group() == "@script:":
                    # The script is host-language text: never tokenized
                    if self.pos < len(src):
                        self._emit(TokenKind.STRING, self.pos, len(src))
                    return self.tokens
                continue

            ident = _IDENT.match(src, start)
            if ident:
                word = ident.group()
                if word in KEYWORDS:
                    kind = TokenKind.KEYWORD
                    self._after_host = word == "host"
                elif word in BOOL_LITERALS:
                    kind = TokenKind.BOOL
                else:
                    kind = TokenKind.IDENTIFIER
                self._emit(kind, start, ident.end())
                continue

            number = _FLOAT.match(src, start)
            if number:
                self._emit(TokenKind.FLOAT, start, number.end())
                continue
            number = _INT.match(src, start)
            if number:
                self._emit(TokenKind.INT, start, number.end())
                continue

            for op in OPERATORS:
                if src.startswith(op, start):
                    self._emit(TokenKind.OPERATOR, start, start + len(op))
                    break
            else:
                if ch in PUNCTUATION:
                    self._emit(TokenKind.PUNCTUATION, start, start + 1)
                else:
                    raise self._error(
                        start, start + 1, f"unrecognized character {ch!r}"
                    )


def tokenize(source: str) -> list[Token]:
    """
    Split QRunes source into tokens.

    Args:
        source: Program text

    Returns:
        Ordered tokens; skipped whitespace and comments plus the
        lexemes reproduce the input

    Raises:
        LexError: On an unrecognized character, unknown section marker,
            or unterminated block comment / host block
    """
    return _Scanner(source).scan()
