"""
Abstract syntax tree for QRunes programs.

Nodes are plain dataclasses with a ``span``; expression nodes also carry
the ``sem_type`` slot that semantic analysis fills in. Node equality is
structural and ignores ``sem_type``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Union

from qrunes.services.frontend.tokens import TYPE_NAMES, SourceSpan

if TYPE_CHECKING:
    from qrunes.services.semantics.types import SemType


# =============================================================================
# Expressions
# =============================================================================


@dataclass
class Expr:
    """Base class for expressions."""

    span: SourceSpan = field(kw_only=True)
    sem_type: SemType | None = field(
        default=None, kw_only=True, compare=False, repr=False
    )


@dataclass
class Ident(Expr):
    name: str


@dataclass
class IntLit(Expr):
    value: int


@dataclass
class FloatLit(Expr):
    value: float


@dataclass
class BoolLit(Expr):
    value: bool


@dataclass
class Index(Expr):
    base: Expr
    index: Expr


@dataclass
class Slice(Expr):
    base: Expr
    lo: Expr
    hi: Expr


@dataclass
class Call(Expr):
    name: str
    args: list[Expr]
    name_span: SourceSpan = field(kw_only=True)


@dataclass
class Len(Expr):
    arg: Expr


@dataclass
class Unary(Expr):
    op: str
    operand: Expr


@dataclass
class Binary(Expr):
    op: str
    left: Expr
    right: Expr


# =============================================================================
# Statements
# =============================================================================


@dataclass
class Block:
    """Brace-delimited (or single-statement) statement list."""

    stmts: list[Stmt]
    span: SourceSpan


@dataclass
class Stmt:
    """Base class for statements."""

    span: SourceSpan = field(kw_only=True)


@dataclass
class Let(Stmt):
    """``let x = e;`` or a typed local such as ``qubit alias = q;``."""

    name: str
    init: Expr
    decl_type: str | None = None
    name_span: SourceSpan = field(kw_only=True)


@dataclass
class HostDecl(Stmt):
    typename: str
    name: str
    init: Expr
    name_span: SourceSpan = field(kw_only=True)


@dataclass
class HostBlock(Stmt):
    text: str


@dataclass
class Assign(Stmt):
    target: Expr
    op: str
    value: Expr


@dataclass
class ExprStmt(Stmt):
    expr: Expr


@dataclass
class If(Stmt):
    cond: Expr
    then: Block
    orelse: Block | None = None


@dataclass
class While(Stmt):
    cond: Expr
    body: Block


@dataclass
class For(Stmt):
    """``for (var = lo : hi)`` over the half-open range lo .. hi-1."""

    var: str
    lo: Expr
    hi: Expr
    body: Block
    var_span: SourceSpan = field(kw_only=True)


@dataclass
class QIf(Stmt):
    cond: Expr
    then: Block
    orelse: Block | None = None


@dataclass
class QWhile(Stmt):
    cond: Expr
    body: Block


# =============================================================================
# Top level
# =============================================================================


@dataclass
class Param:
    """One ``TYPE name`` entry of a parameter list."""

    type_name: str
    name: str
    span: SourceSpan
    name_span: SourceSpan

    @property
    def is_host_opaque(self) -> bool:
        """Parameter types outside the QRunes set belong to the host language."""
        return self.type_name not in TYPE_NAMES

    def signature(self) -> str:
        """``type name`` text as written."""
        return f"{self.type_name} {self.name}"


@dataclass
class ConstLet:
    """Top-level ``let`` constant."""

    name: str
    init: Expr
    span: SourceSpan
    name_span: SourceSpan


@dataclass
class FnDecl:
    """Function declaration without a body."""

    name: str
    params: list[Param]
    span: SourceSpan
    name_span: SourceSpan


@dataclass
class FnDef:
    """Function definition; implicitly returns a quantum program."""

    name: str
    params: list[Param]
    body: Block
    span: SourceSpan
    name_span: SourceSpan


TopItem = Union[ConstLet, FnDecl, FnDef]


@dataclass
class Setting:
    """``name = value;`` pair from the settings section."""

    name: str
    value: str
    span: SourceSpan


@dataclass
class Ast:
    """A parsed QRunes file: settings, QCode items and the raw script."""

    settings: list[Setting] = field(default_factory=list)
    qcode_items: list[TopItem] = field(default_factory=list)
    script: str | None = None

    def setting(self, name: str) -> str | None:
        """Last value given for a setting (names are case-insensitive)."""
        value = None
        for item in self.settings:
            if item.name.lower() == name.lower():
                value = item.value
        return value

    @property
    def functions(self) -> list[FnDef]:
        return [item for item in self.qcode_items if isinstance(item, FnDef)]

    @property
    def constants(self) -> list[ConstLet]:
        return [item for item in self.qcode_items if isinstance(item, ConstLet)]
