"""
Recursive-descent parser for QRunes.

Statements are parsed by recursive descent, expressions by precedence
climbing with C operator precedence. The parser recovers at statement
boundaries (``;`` and ``}``) so one run reports every syntax error.
"""

from dataclasses import dataclass, field
from typing import Any

from qrunes.core.exceptions import LexError, ParseError
from qrunes.services.frontend import ast
from qrunes.services.frontend.lexer import tokenize
from qrunes.services.frontend.tokens import TYPE_NAMES, SourceSpan, Token, TokenKind

# Binding power of binary operators (higher binds tighter), all left-associative
BINARY_PRECEDENCE: dict[str, int] = {
    "||": 10,
    "&&": 20,
    "==": 30,
    "!=": 30,
    "<": 40,
    "<=": 40,
    ">": 40,
    ">=": 40,
    "+": 50,
    "-": 50,
    "*": 60,
    "/": 60,
    "%": 60,
}
UNARY_PRECEDENCE = 70
POSTFIX_PRECEDENCE = 80

UNARY_OPERATORS: frozenset[str] = frozenset({"-", "!"})
ASSIGN_OPERATORS: frozenset[str] = frozenset({"=", "+=", "-=", "*="})


@dataclass
class ParseResult:
    """Outcome of parsing: a (possibly partial) AST plus all errors found."""

    ast: ast.Ast
    errors: list[ParseError] = field(default_factory=list)
    lex_error: LexError | None = None

    @property
    def ok(self) -> bool:
        return not self.errors and self.lex_error is None

    @property
    def all_errors(self) -> list[Any]:
        """Lex error (if any) followed by parse errors."""
        return ([self.lex_error] if self.lex_error else []) + list(self.errors)


class _Abort(Exception):
    """Unwinds to the nearest recovery point after an error was recorded."""


class Parser:
    """Parser over one token list."""

    def __init__(self, tokens: list[Token]) -> None:
        self.tokens = list(tokens)
        if tokens:
            last = tokens[-1].span
            line, column = last.end_line, last.end_column
            eof_span = SourceSpan(last.end, last.end, line, column, line, column)
        else:
            eof_span = SourceSpan(0, 0, 1, 1, 1, 1)
        self.tokens.append(Token(TokenKind.EOF, "", eof_span))
        self.pos = 0
        self.errors: list[ParseError] = []

    # ===========================================
    # Token helpers
    # ===========================================

    def peek(self, ahead: int = 0) -> Token:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    @property
    def previous(self) -> Token:
        return self.tokens[self.pos - 1] if self.pos > 0 else self.tokens[0]

    def at_end(self) -> bool:
        return self.peek().kind == TokenKind.EOF

    def advance(self) -> Token:
        tok = self.peek()
        if tok.kind != TokenKind.EOF:
            self.pos += 1
        return tok

    def check(self, kind: TokenKind, lexeme: str | None = None) -> bool:
        return self.peek().is_(kind, lexeme)

    def accept(self, kind: TokenKind, lexeme: str | None = None) -> Token | None:
        if self.check(kind, lexeme):
            return self.advance()
        return None

    def fail(self, expected: str) -> _Abort:
        found = self.peek()
        self.errors.append(ParseError(found.span, expected, found.describe()))
        return _Abort()

    def expect(
        self, kind: TokenKind, lexeme: str | None = None, what: str | None = None
    ) -> Token:
        tok = self.accept(kind, lexeme)
        if tok is None:
            raise self.fail(what or (f"'{lexeme}'" if lexeme else kind.value))
        return tok

    def span_from(self, start: Token) -> SourceSpan:
        """Span from ``start`` to the last consumed token."""
        return start.span.cover(self.previous.span)

    def end_statement(self) -> None:
        """Consume ``;``; optional before ``}``, end of input or a line break."""
        if self.accept(TokenKind.PUNCTUATION, ";"):
            return
        nxt = self.peek()
        if (
            nxt.kind == TokenKind.EOF
            or nxt.is_(TokenKind.PUNCTUATION, "}")
            or nxt.span.line > self.previous.span.end_line
        ):
            return
        raise self.fail("';'")

    def synchronize(self, top_level: bool = False) -> None:
        """Skip to the next statement boundary, keeping nested braces balanced."""
        depth = 0
        while not self.at_end():
            tok = self.peek()
            if tok.kind == TokenKind.SECTION_MARKER and top_level:
                return
            if tok.is_(TokenKind.PUNCTUATION, "{"):
                depth += 1
            elif tok.is_(TokenKind.PUNCTUATION, "}"):
                if depth == 0:
                    if top_level:
                        self.advance()
                    return
                depth -= 1
                self.advance()
                if depth == 0 and top_level:
                    return
                continue
            elif tok.is_(TokenKind.PUNCTUATION, ";") and depth == 0:
                self.advance()
                return
            self.advance()

    # ===========================================
    # File structure
    # ===========================================

    def parse_file(self) -> ast.Ast:
        tree = ast.Ast()
        mode = "preamble"
        while not self.at_end():
            tok = self.peek()
            if tok.kind == TokenKind.SECTION_MARKER:
                self.advance()
                if tok.lexeme == "@settings:":
                    mode = "settings"
                elif tok.lexeme in ("@qcode:", "@qcodes:"):
                    mode = "qcode"
                else:
                    raw = self.accept(TokenKind.STRING)
                    tree.script = _strip_marker_newline(raw.lexeme) if raw else ""
                    break
                continue
            start = self.pos
            try:
                if mode == "settings" or (mode == "preamble" and self._at_setting()):
                    tree.settings.append(self.parse_setting())
                else:
                    mode = "qcode"
                    tree.qcode_items.append(self.parse_top_item())
            except _Abort:
                self.synchronize(top_level=True)
                if self.pos == start:
                    self.advance()
        return tree

    def _at_setting(self) -> bool:
        return self.check(TokenKind.IDENTIFIER) and self.peek(1).is_(
            TokenKind.OPERATOR, "="
        )

    def parse_setting(self) -> ast.Setting:
        name = self.expect(TokenKind.IDENTIFIER, what="setting name")
        self.expect(TokenKind.OPERATOR, "=")
        pieces: list[str] = []
        last: Token | None = None
        while not self.at_end():
            tok = self.peek()
            if tok.is_(TokenKind.PUNCTUATION, ";"):
                self.advance()
                break
            if tok.kind == TokenKind.SECTION_MARKER or tok.span.line > name.span.line:
                break
            if last is not None and tok.span.start > last.span.end:
                pieces.append(" ")
            pieces.append(tok.lexeme)
            last = self.advance()
        value = "".join(pieces).strip()
        if not value:
            raise self.fail("setting value")
        return ast.Setting(name.lexeme, value, self.span_from(name))

    def parse_top_item(self) -> ast.TopItem:
        start = self.peek()
        if self.accept(TokenKind.KEYWORD, "let"):
            name = self.expect(TokenKind.IDENTIFIER, what="constant name")
            self.expect(TokenKind.OPERATOR, "=")
            init = self.expression()
            self.end_statement()
            return ast.ConstLet(name.lexeme, init, self.span_from(start), name.span)
        if self.check(TokenKind.IDENTIFIER) and self.peek(1).is_(
            TokenKind.PUNCTUATION, "("
        ):
            name = self.advance()
            params = self.parse_params()
            if self.check(TokenKind.PUNCTUATION, "{"):
                body = self.parse_block()
                return ast.FnDef(
                    name.lexeme, params, body, self.span_from(start), name.span
                )
            self.end_statement()
            return ast.FnDecl(name.lexeme, params, self.span_from(start), name.span)
        raise self.fail("function definition, declaration or top-level 'let'")

    def parse_params(self) -> list[ast.Param]:
        self.expect(TokenKind.PUNCTUATION, "(")
        params: list[ast.Param] = []
        if self.accept(TokenKind.PUNCTUATION, ")"):
            return params
        while True:
            start = self.peek()
            self.accept(TokenKind.KEYWORD, "host")
            type_tok = self.expect(TokenKind.IDENTIFIER, what="parameter type")
            name = self.expect(TokenKind.IDENTIFIER, what="parameter name")
            span = self.span_from(start)
            params.append(ast.Param(type_tok.lexeme, name.lexeme, span, name.span))
            if self.accept(TokenKind.PUNCTUATION, ")"):
                return params
            self.expect(TokenKind.PUNCTUATION, ",", what="',' or ')'")

    # ===========================================
    # Statements
    # ===========================================

    def parse_block(self) -> ast.Block:
        open_brace = self.expect(TokenKind.PUNCTUATION, "{")
        stmts: list[ast.Stmt] = []
        while not self.check(TokenKind.PUNCTUATION, "}") and not self.at_end():
            start = self.pos
            try:
                stmts.append(self.statement())
            except _Abort:
                self.synchronize()
                if self.pos == start:
                    self.advance()
        self.expect(TokenKind.PUNCTUATION, "}")
        return ast.Block(stmts, self.span_from(open_brace))

    def parse_body(self) -> ast.Block:
        """Loop body: a block, or a single statement as in C."""
        if self.check(TokenKind.PUNCTUATION, "{"):
            return self.parse_block()
        stmt = self.statement()
        return ast.Block([stmt], stmt.span)

    def statement(self) -> ast.Stmt:
        tok = self.peek()
        if tok.kind == TokenKind.KEYWORD:
            handler = {
                "let": self._let,
                "host": self._host,
                "if": self._if,
                "while": self._while,
                "for": self._for,
                "qif": self._qif,
                "qwhile": self._qwhile,
            }.get(tok.lexeme)
            if handler is None:
                raise self.fail("statement")
            return handler()
        if (
            tok.kind == TokenKind.IDENTIFIER
            and tok.lexeme in TYPE_NAMES
            and self.peek(1).kind == TokenKind.IDENTIFIER
        ):
            return self._typed_let()
        return self._expression_statement()

    def _let(self) -> ast.Let:
        start = self.advance()
        name = self.expect(TokenKind.IDENTIFIER, what="variable name")
        self.expect(TokenKind.OPERATOR, "=")
        init = self.expression()
        self.end_statement()
        return ast.Let(
            name.lexeme, init, span=self.span_from(start), name_span=name.span
        )

    def _typed_let(self) -> ast.Let:
        start = self.advance()
        name = self.expect(TokenKind.IDENTIFIER, what="variable name")
        self.expect(TokenKind.OPERATOR, "=")
        init = self.expression()
        self.end_statement()
        return ast.Let(
            name.lexeme,
            init,
            start.lexeme,
            span=self.span_from(start),
            name_span=name.span,
        )

    def _host(self) -> ast.Stmt:
        start = self.advance()
        raw = self.accept(TokenKind.STRING)
        if raw is not None:
            self.accept(TokenKind.PUNCTUATION, ";")
            return ast.HostBlock(raw.lexeme[1:-1], span=self.span_from(start))
        typename = self.expect(TokenKind.IDENTIFIER, what="host type name")
        name = self.expect(TokenKind.IDENTIFIER, what="variable name")
        self.expect(TokenKind.OPERATOR, "=")
        init = self.expression()
        self.end_statement()
        return ast.HostDecl(
            typename.lexeme,
            name.lexeme,
            init,
            span=self.span_from(start),
            name_span=name.span,
        )

    def _condition(self) -> ast.Expr:
        self.expect(TokenKind.PUNCTUATION, "(")
        cond = self.expression()
        self.expect(TokenKind.PUNCTUATION, ")")
        return cond

    def _else_branch(self, keyword: str, chained: str) -> ast.Block | None:
        if not self.accept(TokenKind.KEYWORD, keyword):
            return None
        if self.check(TokenKind.KEYWORD, chained):
            nested = self.statement()
            return ast.Block([nested], nested.span)
        return self.parse_block()

    def _if(self) -> ast.If:
        start = self.advance()
        cond = self._condition()
        then = self.parse_block()
        orelse = self._else_branch("else", "if")
        return ast.If(cond, then, orelse, span=self.span_from(start))

    def _qif(self) -> ast.QIf:
        start = self.advance()
        cond = self._condition()
        then = self.parse_block()
        orelse = self._else_branch("qelse", "qif")
        return ast.QIf(cond, then, orelse, span=self.span_from(start))

    def _while(self) -> ast.While:
        start = self.advance()
        cond = self._condition()
        body = self.parse_body()
        return ast.While(cond, body, span=self.span_from(start))

    def _qwhile(self) -> ast.QWhile:
        start = self.advance()
        cond = self._condition()
        body = self.parse_block()
        return ast.QWhile(cond, body, span=self.span_from(start))

    def _for(self) -> ast.For:
        start = self.advance()
        self.expect(TokenKind.PUNCTUATION, "(")
        var = self.expect(TokenKind.IDENTIFIER, what="loop variable")
        self.expect(TokenKind.OPERATOR, "=")
        lo = self.expression()
        self.expect(TokenKind.PUNCTUATION, ":", what="':' in range")
        hi = self.expression()
        self.expect(TokenKind.PUNCTUATION, ")")
        body = self.parse_body()
        return ast.For(
            var.lexeme, lo, hi, body, span=self.span_from(start), var_span=var.span
        )

    def _expression_statement(self) -> ast.Stmt:
        start = self.peek()
        expr = self.expression()
        op = self.peek()
        if op.kind == TokenKind.OPERATOR and op.lexeme in ASSIGN_OPERATORS:
            if not isinstance(expr, (ast.Ident, ast.Index)):
                self.errors.append(
                    ParseError(expr.span, "assignable name or element", "expression")
                )
                raise _Abort()
            self.advance()
            value = self.expression()
            self.end_statement()
            return ast.Assign(expr, op.lexeme, value, span=self.span_from(start))
        self.end_statement()
        return ast.ExprStmt(expr, span=self.span_from(start))

    # ===========================================
    # Expressions
    # ===========================================

    def expression(self, rbp: int = 0) -> ast.Expr:
        left = self._prefix()
        while True:
            tok = self.peek()
            if tok.is_(TokenKind.PUNCTUATION, "["):
                if POSTFIX_PRECEDENCE <= rbp:
                    break
                left = self._subscript(left)
                continue
            bp = 0
            if tok.kind == TokenKind.OPERATOR:
                bp = BINARY_PRECEDENCE.get(tok.lexeme, 0)
            if bp <= rbp:
                break
            self.advance()
            right = self.expression(bp)
            left = ast.Binary(tok.lexeme, left, right, span=left.span.cover(right.span))
        return left

    def _prefix(self) -> ast.Expr:
        tok = self.peek()
        if tok.kind == TokenKind.INT:
            self.advance()
            return ast.IntLit(int(tok.lexeme), span=tok.span)
        if tok.kind == TokenKind.FLOAT:
            self.advance()
            return ast.FloatLit(float(tok.lexeme), span=tok.span)
        if tok.kind == TokenKind.BOOL:
            self.advance()
            return ast.BoolLit(tok.lexeme.lower() == "true", span=tok.span)
        if tok.kind == TokenKind.IDENTIFIER:
            self.advance()
            if self.check(TokenKind.PUNCTUATION, "("):
                return self._call(tok)
            return ast.Ident(tok.lexeme, span=tok.span)
        if tok.is_(TokenKind.PUNCTUATION, "("):
            self.advance()
            inner = self.expression()
            self.expect(TokenKind.PUNCTUATION, ")")
            inner.span = self.span_from(tok)
            return inner
        if tok.kind == TokenKind.OPERATOR and tok.lexeme in UNARY_OPERATORS:
            self.advance()
            operand = self.expression(UNARY_PRECEDENCE)
            return ast.Unary(tok.lexeme, operand, span=tok.span.cover(operand.span))
        raise self.fail("expression")

    def _call(self, name: Token) -> ast.Expr:
        self.expect(TokenKind.PUNCTUATION, "(")
        args: list[ast.Expr] = []
        if not self.accept(TokenKind.PUNCTUATION, ")"):
            while True:
                args.append(self.expression())
                if self.accept(TokenKind.PUNCTUATION, ")"):
                    break
                self.expect(TokenKind.PUNCTUATION, ",", what="',' or ')'")
        span = self.span_from(name)
        if name.lexeme == "len":
            if len(args) != 1:
                self.errors.append(
                    ParseError(
                        span, "exactly one argument to len", f"{len(args)} arguments"
                    )
                )
                raise _Abort()
            return ast.Len(args[0], span=span)
        return ast.Call(name.lexeme, args, span=span, name_span=name.span)

    def _subscript(self, base: ast.Expr) -> ast.Expr:
        self.expect(TokenKind.PUNCTUATION, "[")
        lo = self.expression()
        if self.accept(TokenKind.PUNCTUATION, ":"):
            hi = self.expression()
            self.expect(TokenKind.PUNCTUATION, "]")
            return ast.Slice(base, lo, hi, span=base.span.cover(self.previous.span))
        self.expect(TokenKind.PUNCTUATION, "]")
        return ast.Index(base, lo, span=base.span.cover(self.previous.span))


def _strip_marker_newline(text: str) -> str:
    """Drop the line break that ends the ``@script:`` marker line."""
    if text.startswith("\r\n"):
        return text[2:]
    if text.startswith("\n"):
        return text[1:]
    return text


def parse(tokens: list[Token]) -> ParseResult:
    """
    Parse a token list into an AST.

    Args:
        tokens: Output of ``tokenize``

    Returns:
        ParseResult with the (possibly partial) AST and every ParseError
    """
    parser = Parser(tokens)
    tree = parser.parse_file()
    return ParseResult(ast=tree, errors=parser.errors)


def parse_source(source: str) -> ParseResult:
    """Tokenize and parse; a lexer failure yields an empty AST and the LexError."""
    try:
        tokens = tokenize(source)
    except LexError as exc:
        return ParseResult(ast=ast.Ast(), lex_error=exc)
    return parse(tokens)
