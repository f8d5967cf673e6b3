"""
Source emitter: typed AST -> host-language source files.

Each QRunes function becomes a target function that creates an empty
program container, appends every quantum operation in order and returns
it. Assist-classical code becomes native statements run while the
program is being built; classical assignments are appended to the
container; qif/qwhile bodies are built as sub-programs and handed to the
profile's control-flow builders. All spelling comes from the profile.
"""

import textwrap
from dataclasses import dataclass, field
from typing import Any

from qrunes.core import logger
from qrunes.core.exceptions import UnsupportedConstructError
from qrunes.schemas.profile import TargetProfile
from qrunes.services.frontend import ast
from qrunes.services.frontend.parser import BINARY_PRECEDENCE
from qrunes.services.frontend.tokens import SourceSpan
from qrunes.services.semantics.analyzer import TypedAst
from qrunes.services.semantics.builtins import lookup_builtin
from qrunes.services.semantics.types import TypeKind

COMPARISON_OPS = frozenset({"==", "!=", "<", "<=", ">", ">="})
TRUE_SETTINGS = frozenset({"true", "yes", "1", "on"})


@dataclass
class TargetSourceText:
    """Generated files, in emission order."""

    files: list[tuple[str, str]] = field(default_factory=list)

    def text(self, filename: str) -> str:
        for name, text in self.files:
            if name == filename:
                return text
        raise KeyError(filename)

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {"files": [{"name": name, "text": text} for name, text in self.files]}


class _FunctionEmitter:
    """Emits the body of one function."""

    def __init__(self, profile: TargetProfile) -> None:
        self.profile = profile
        self.control = profile.control
        self.lines: list[str] = []
        self.subprograms = 0

    def emit(self, depth: int, text: str) -> None:
        self.lines.append(self.profile.indent * depth + text if text else "")

    def _require(self, template: str | None, construct: str, span: SourceSpan) -> str:
        if template is None:
            raise UnsupportedConstructError(span, construct, self.profile.name)
        return template

    # ===========================================
    # Functions and blocks
    # ===========================================

    def function(self, fn: ast.FnDef, params: str) -> list[str]:
        prog = self.profile.program_var
        for line in self.profile.function_open:
            self.emit(0, line.format(name=fn.name, params=params))
        self.emit(1, self.profile.program_init.format(prog=prog))
        self.statements(fn.body.stmts, 1, prog)
        self.emit(1, self.profile.program_return.format(prog=prog))
        for line in self.profile.function_close:
            self.emit(0, line)
        return self.lines

    def statements(self, stmts: list[ast.Stmt], depth: int, prog: str) -> None:
        for stmt in stmts:
            self.statement(stmt, depth, prog)

    def compound(
        self, header: str, stmts: list[ast.Stmt], depth: int, prog: str
    ) -> None:
        """Header line plus an indented block."""
        self.emit(depth, header)
        if self.control.block_open is not None:
            self.emit(depth, self.control.block_open)
        before = len(self.lines)
        self.statements(stmts, depth + 1, prog)
        if len(self.lines) == before and self.control.empty_block is not None:
            self.emit(depth + 1, self.control.empty_block)
        if self.control.block_close is not None:
            self.emit(depth, self.control.block_close)

    def subprogram(self, block: ast.Block | None, depth: int, prog: str) -> str:
        """Build a sub-program container; returns its variable name."""
        self.subprograms += 1
        name = self.control.subprogram_name.format(
            prog=self.profile.program_var, n=self.subprograms
        )
        self.emit(depth, self.profile.program_init.format(prog=name))
        stmts = block.stmts if block is not None else []
        if self.control.subprogram_open is not None:
            self.emit(depth, self.control.subprogram_open)
            self.statements(stmts, depth + 1, name)
            self.emit(depth, self.control.subprogram_close or "")
        else:
            self.statements(stmts, depth, name)
        return name

    # ===========================================
    # Statements
    # ===========================================

    def statement(self, stmt: ast.Stmt, depth: int, prog: str) -> None:
        p = self.profile
        if isinstance(stmt, ast.Let):
            value = self.expr(stmt.init)
            if stmt.decl_type is not None:
                type_name = p.types.lookup(stmt.decl_type)
                self.emit(
                    depth,
                    p.typed_let.format(type=type_name, name=stmt.name, value=value),
                )
            else:
                self.emit(depth, p.let.format(name=stmt.name, value=value))
        elif isinstance(stmt, ast.HostDecl):
            value = self.expr(stmt.init)
            self.emit(
                depth,
                p.host_decl.format(type=stmt.typename, name=stmt.name, value=value),
            )
        elif isinstance(stmt, ast.HostBlock):
            for line in textwrap.dedent(stmt.text).strip("\n").splitlines():
                self.emit(depth, line.rstrip())
        elif isinstance(stmt, ast.Assign):
            self.assignment(stmt, depth, prog)
        elif isinstance(stmt, ast.ExprStmt):
            if isinstance(stmt.expr, ast.Call):
                self.emit(depth, p.insert.format(prog=prog, op=self.expr(stmt.expr)))
        elif isinstance(stmt, ast.If):
            self.if_chain(stmt, depth, prog, self.control.if_header)
        elif isinstance(stmt, ast.While):
            header = self.control.while_header.format(cond=self.expr(stmt.cond))
            self.compound(header, stmt.body.stmts, depth, prog)
        elif isinstance(stmt, ast.For):
            header = self.control.for_header.format(
                var=stmt.var, lo=self.expr(stmt.lo), hi=self.expr(stmt.hi)
            )
            self.compound(header, stmt.body.stmts, depth, prog)
        elif isinstance(stmt, ast.QIf):
            self.qif(stmt, depth, prog)
        elif isinstance(stmt, ast.QWhile):
            builder = self._require(self.control.while_builder, "qwhile", stmt.span)
            body = self.subprogram(stmt.body, depth, prog)
            op = builder.format(cond=self.expr(stmt.cond), body=body)
            self.emit(depth, p.insert.format(prog=prog, op=op))

    def if_chain(self, stmt: ast.If, depth: int, prog: str, header: str) -> None:
        self.compound(
            header.format(cond=self.expr(stmt.cond)), stmt.then.stmts, depth, prog
        )
        orelse = stmt.orelse
        if orelse is None:
            return
        if len(orelse.stmts) == 1 and isinstance(orelse.stmts[0], ast.If):
            self.if_chain(orelse.stmts[0], depth, prog, self.control.else_if_header)
        else:
            self.compound(self.control.else_header, orelse.stmts, depth, prog)

    def qif(self, stmt: ast.QIf, depth: int, prog: str) -> None:
        cond = self.expr(stmt.cond)
        then = self.subprogram(stmt.then, depth, prog)
        if stmt.orelse is None:
            builder = self._require(self.control.if_builder, "qif", stmt.span)
            op = builder.format(cond=cond, then=then)
        else:
            builder = self._require(
                self.control.if_else_builder, "qif/qelse", stmt.span
            )
            qelse = self.subprogram(stmt.orelse, depth, prog)
            op = builder.format(cond=cond, then=then, qelse=qelse)
        self.emit(depth, self.profile.insert.format(prog=prog, op=op))

    def assignment(self, stmt: ast.Assign, depth: int, prog: str) -> None:
        p = self.profile
        target = self.expr(stmt.target)
        target_type = stmt.target.sem_type
        if target_type is not None and target_type.is_classical:
            value_expr = stmt.value
            if stmt.op != "=":
                value_expr = ast.Binary(
                    stmt.op[0], stmt.target, stmt.value, span=stmt.span
                )
            self.emit(
                depth,
                p.classical_insert.format(
                    prog=prog, target=target, value=self.expr(value_expr)
                ),
            )
            return
        self.emit(
            depth,
            p.assign.format(
                target=target, op_symbol=stmt.op, value=self.expr(stmt.value)
            ),
        )

    # ===========================================
    # Expressions
    # ===========================================

    def expr(self, e: ast.Expr) -> str:
        p = self.profile
        if isinstance(e, ast.BoolLit):
            return p.true_literal if e.value else p.false_literal
        if isinstance(e, ast.IntLit):
            return str(e.value)
        if isinstance(e, ast.FloatLit):
            return repr(e.value)
        if isinstance(e, ast.Ident):
            return e.name
        if isinstance(e, ast.Index):
            return f"{self.expr(e.base)}[{self.expr(e.index)}]"
        if isinstance(e, ast.Slice):
            return p.slice_expr.format(
                base=self.expr(e.base), lo=self.expr(e.lo), hi=self.expr(e.hi)
            )
        if isinstance(e, ast.Len):
            return p.len_call.format(arg=self.expr(e.arg))
        if isinstance(e, ast.Call):
            builtin = lookup_builtin(e.name)
            name = p.gate_names.get(builtin.name, builtin.name) if builtin else e.name
            return f"{name}({', '.join(self.expr(a) for a in e.args)})"
        if isinstance(e, ast.Unary):
            operand = self.expr(e.operand)
            if isinstance(e.operand, ast.Binary):
                operand = f"({operand})"
            return f"{p.operators.get(e.op, e.op)}{operand}"
        if isinstance(e, ast.Binary):
            return self.binary(e)
        raise UnsupportedConstructError(e.span, type(e).__name__, p.name)

    def binary(self, e: ast.Binary) -> str:
        p = self.profile
        template = {"/": p.int_division, "%": p.int_modulo}.get(e.op)
        if template is not None and _integral(e.left, e.right):
            return template.format(
                left=self.grouped(e.left), right=self.grouped(e.right)
            )
        prec = BINARY_PRECEDENCE[e.op]
        left = self.operand(e.left, e.op, prec, is_right=False)
        right = self.operand(e.right, e.op, prec, is_right=True)
        return f"{left} {p.operators.get(e.op, e.op)} {right}"

    def grouped(self, child: ast.Expr) -> str:
        """Operand text, parenthesized when it is itself a binary expression."""
        text = self.expr(child)
        return f"({text})" if isinstance(child, ast.Binary) else text

    def operand(
        self, child: ast.Expr, parent_op: str, prec: int, is_right: bool
    ) -> str:
        text = self.expr(child)
        if isinstance(child, ast.Binary):
            child_prec = BINARY_PRECEDENCE[child.op]
            if (
                child_prec < prec
                or (is_right and child_prec == prec)
                or (child.op in COMPARISON_OPS and parent_op in COMPARISON_OPS)
            ):
                return f"({text})"
        if isinstance(child, ast.Unary):
            if self.profile.operators.get(child.op, child.op) != child.op:
                return f"({text})"
        return text


def _integral(*operands: ast.Expr) -> bool:
    kinds = (TypeKind.ASSIST_INT, TypeKind.ASSIST_BOOL)
    return all(o.sem_type is not None and o.sem_type.kind in kinds for o in operands)


def _chunks_to_text(chunks: list[list[str]], blank_lines: int) -> str:
    parts = ["\n".join(chunk) for chunk in chunks if chunk]
    return ("\n" * (blank_lines + 1)).join(parts) + "\n"


def autoimport_enabled(program: TypedAst) -> bool:
    value = program.ast.setting("autoimport")
    return value is not None and value.strip().lower() in TRUE_SETTINGS


def codegen(
    program: TypedAst, profile: TargetProfile, stem: str = "program"
) -> TargetSourceText:
    """
    Transpile a checked program with one target profile.

    Args:
        program: Analyzed program with zero errors
        profile: Target profile
        stem: Output file stem

    Returns:
        TargetSourceText: header + implementation, or a single module

    Raises:
        UnsupportedConstructError: The profile lacks an idiom the program needs
    """
    tree = program.ast
    functions = tree.functions

    def params_of(fn: ast.FnDef) -> str:
        return ", ".join(
            profile.param.format(
                type=profile.types.lookup(prm.type_name), name=prm.name
            )
            for prm in fn.params
        )

    chunks: list[list[str]] = []
    if autoimport_enabled(program) and profile.autoimport_snippet:
        chunks.append(profile.autoimport_snippet.splitlines())
    if profile.include_header and profile.header_extension:
        chunks.append([profile.include_header.format(stem=stem)])
    constants = [
        profile.constant.format(
            name=c.name, value=_FunctionEmitter(profile).expr(c.init)
        )
        for c in tree.constants
    ]
    chunks.append(constants)
    for fn in functions:
        chunks.append(_FunctionEmitter(profile).function(fn, params_of(fn)))
    if tree.script is not None and tree.script.strip():
        chunks.append([tree.script.rstrip("\n")])

    result = TargetSourceText()
    if profile.header_extension is not None:
        prototype = profile.prototype or ""
        header = [
            prototype.format(name=fn.name, params=params_of(fn)) for fn in functions
        ]
        result.files.append(
            (
                f"{stem}{profile.header_extension}",
                _chunks_to_text([profile.header_preamble, header], 1),
            )
        )
    result.files.append(
        (
            f"{stem}{profile.source_extension}",
            _chunks_to_text(chunks, profile.blank_lines_between),
        )
    )
    logger.debug(f"Generated {len(result.files)} file(s) with profile '{profile.name}'")
    return result
