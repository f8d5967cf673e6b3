"""
QRunes frontend: tokens, lexer, AST and parser.
"""

from qrunes.services.frontend.lexer import tokenize
from qrunes.services.frontend.parser import ParseResult, parse, parse_source
from qrunes.services.frontend.tokens import LineIndex, SourceSpan, Token, TokenKind

__all__ = [
    "tokenize",
    "parse",
    "parse_source",
    "ParseResult",
    "LineIndex",
    "SourceSpan",
    "Token",
    "TokenKind",
]
