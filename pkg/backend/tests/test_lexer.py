"""
Tests for the QRunes lexer.

Covers:
- Token categories for keywords, identifiers, literals and operators
- Longest-match operators and C-style numeric literals
- Comments, section markers, host blocks and the raw script payload
- Source spans and lexical errors
"""

import pytest

from qrunes.core.exceptions import LexError
from qrunes.services.frontend import LineIndex, TokenKind, tokenize


def kinds_and_lexemes(source: str) -> list[tuple[TokenKind, str]]:
    return [(t.kind, t.lexeme) for t in tokenize(source)]


# ═══════════════════════════════════════════════════════════════════
# Categories
# ═══════════════════════════════════════════════════════════════════


class TestTokenCategories:
    """Each lexeme lands in the right category."""

    def test_constant_declaration(self):
        assert kinds_and_lexemes("let m = 0.908;") == [
            (TokenKind.KEYWORD, "let"),
            (TokenKind.IDENTIFIER, "m"),
            (TokenKind.OPERATOR, "="),
            (TokenKind.FLOAT, "0.908"),
            (TokenKind.PUNCTUATION, ";"),
        ]

    def test_type_names_are_identifiers(self):
        tokens = tokenize("qvec q")
        assert [t.kind for t in tokens] == [TokenKind.IDENTIFIER, TokenKind.IDENTIFIER]

    def test_quantum_control_keywords(self):
        tokens = tokenize("qif qelse qwhile")
        assert all(t.kind == TokenKind.KEYWORD for t in tokens)

    @pytest.mark.parametrize("word", ["true", "True", "false", "False"])
    def test_bool_literals(self, word):
        assert kinds_and_lexemes(word) == [(TokenKind.BOOL, word)]

    def test_integer_literal(self):
        assert kinds_and_lexemes("42") == [(TokenKind.INT, "42")]

    @pytest.mark.parametrize("text", ["0.5", ".5", "3.", "1e-3", "2.5E+2"])
    def test_float_literals(self, text):
        assert kinds_and_lexemes(text) == [(TokenKind.FLOAT, text)]


class TestOperators:
    """Longest match wins."""

    def test_compound_assignment(self):
        assert kinds_and_lexemes("i+=1") == [
            (TokenKind.IDENTIFIER, "i"),
            (TokenKind.OPERATOR, "+="),
            (TokenKind.INT, "1"),
        ]

    @pytest.mark.parametrize("op", ["==", "!=", "<=", ">=", "&&", "||", "-=", "*="])
    def test_two_character_operators(self, op):
        assert kinds_and_lexemes(f"a {op} b")[1] == (TokenKind.OPERATOR, op)

    def test_negation_is_separate(self):
        assert kinds_and_lexemes("!C2")[0] == (TokenKind.OPERATOR, "!")


# ═══════════════════════════════════════════════════════════════════
# Trivia and raw payloads
# ═══════════════════════════════════════════════════════════════════


class TestTrivia:
    """Comments and whitespace never reach the parser."""

    def test_line_comment(self):
        assert kinds_and_lexemes("H(q); // same as H(q)") == kinds_and_lexemes("H(q);")

    def test_block_comment_spanning_lines(self):
        source = "/* i is inherited normally\n   in the classical control flow. */ i"
        assert kinds_and_lexemes(source) == [(TokenKind.IDENTIFIER, "i")]

    def test_unterminated_block_comment(self):
        with pytest.raises(LexError) as exc_info:
            tokenize("H(q); /* open")
        assert exc_info.value.code == "E001"


class TestSections:
    """Markers, host blocks and the script."""

    @pytest.mark.parametrize("marker", ["@settings:", "@qcode:", "@qcodes:"])
    def test_section_markers(self, marker):
        assert kinds_and_lexemes(marker) == [(TokenKind.SECTION_MARKER, marker)]

    def test_unknown_marker(self):
        with pytest.raises(LexError):
            tokenize("@main:")

    def test_script_is_one_raw_token(self):
        source = "@script:\ninit()\nq0 = qAlloc() # not QRunes $\n"
        tokens = tokenize(source)
        assert [t.kind for t in tokens] == [TokenKind.SECTION_MARKER, TokenKind.STRING]
        assert tokens[1].lexeme == "\ninit()\nq0 = qAlloc() # not QRunes $\n"

    def test_host_block_captured_verbatim(self):
        tokens = tokenize("host{\n    i += 1; { nested }\n}")
        assert tokens[0].lexeme == "host"
        assert tokens[1].kind == TokenKind.STRING
        assert tokens[1].lexeme == "{\n    i += 1; { nested }\n}"

    def test_host_declaration_is_tokenized(self):
        tokens = tokenize("host int i = 0;")
        assert [t.kind for t in tokens[:3]] == [
            TokenKind.KEYWORD,
            TokenKind.IDENTIFIER,
            TokenKind.IDENTIFIER,
        ]

    def test_unterminated_host_block(self):
        with pytest.raises(LexError):
            tokenize("host { i += 1;")


# ═══════════════════════════════════════════════════════════════════
# Locations
# ═══════════════════════════════════════════════════════════════════


class TestSpans:
    """Spans are 1-based and survive line breaks."""

    def test_second_line_position(self):
        tokens = tokenize("H(q);\n  CNOT(a, b);")
        cnot = tokens[5]
        assert cnot.lexeme == "CNOT"
        assert (cnot.span.line, cnot.span.column) == (2, 3)
        assert (cnot.span.end_line, cnot.span.end_column) == (2, 7)

    def test_unrecognized_character_location(self):
        with pytest.raises(LexError) as exc_info:
            tokenize("H(q);\nX(q) $")
        span = exc_info.value.span
        assert (span.line, span.column) == (2, 6)

    def test_lexemes_reproduce_source(self):
        source = "Bell(qvec q, cvec c){ H(q[0]); }"
        tokens = tokenize(source)
        assert all(source[t.span.start : t.span.end] == t.lexeme for t in tokens)


class TestLineIndex:
    """Offset and position conversion."""

    def test_round_trip(self):
        index = LineIndex("ab\ncd\n")
        assert index.position(4) == (2, 2)
        assert index.offset(2, 2) == 4

    def test_offset_clamped_to_line_end(self):
        index = LineIndex("ab\ncd")
        assert index.offset(1, 99) == 2
        assert index.offset(9, 1) == 5
