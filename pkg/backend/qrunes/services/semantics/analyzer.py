"""
Semantic analysis for QRunes.

Builds the scope tree, annotates every expression with its SemType and
checks the typing and scoping rules:

- gate and measurement argument arity and types
- quantum values only as call arguments, alias sources and index bases
- family of binary expressions (classical wins over assist-classical)
- no classical values bound to assist-classical names
- condition families of if/while/for versus qif/qwhile
- the qif/qwhile barrier for enclosing assist-classical names
- ``len`` over vectors only
- every call resolves and every declaration has a definition

Analysis never aborts: it always returns a TypedAst, possibly with
``sem_type`` left as None on expressions that could not be typed.
"""

from dataclasses import dataclass, field
from typing import Callable

from qrunes.core import logger
from qrunes.services.frontend import ast
from qrunes.services.frontend.tokens import SourceSpan
from qrunes.services.semantics.builtins import Builtin, lookup_builtin
from qrunes.services.semantics.diagnostics import Diagnostic, sort_diagnostics
from qrunes.services.semantics.scope import Scope, Symbol, SymbolKind
from qrunes.services.semantics.types import (
    ASSIST_BOOL,
    ASSIST_FLOAT,
    ASSIST_INT,
    CBIT,
    SemType,
    TypeKind,
)


TypeCheck = Callable[[SemType], bool]

COMPARISON_OPS = frozenset({"==", "!=", "<", "<=", ">", ">="})
LOGICAL_OPS = frozenset({"&&", "||"})
# argument forms that name qubits or registers rather than compute a value
REFERENCE_NODES = (ast.Ident, ast.Index, ast.Slice)


# =============================================================================
# Analysis results
# =============================================================================


@dataclass
class FunctionInfo:
    """Everything known about one function name."""

    name: str
    params: list[ast.Param]
    param_types: list[SemType]
    symbol: Symbol
    definition: ast.FnDef | None = None
    declarations: list[ast.FnDecl] = field(default_factory=list)

    def signature(self) -> str:
        return f"{self.name}({', '.join(p.signature() for p in self.params)})"


@dataclass
class ScopeRecord:
    """A scope together with the source region it governs."""

    span: SourceSpan
    scope: Scope


@dataclass
class Reference:
    """An identifier occurrence and what it resolved to."""

    span: SourceSpan
    symbol: Symbol | None = None
    builtin: Builtin | None = None


@dataclass
class TypedAst:
    """The AST after analysis, with its symbol tables."""

    ast: ast.Ast
    functions: dict[str, FunctionInfo]
    module_scope: Scope
    scopes: list[ScopeRecord] = field(default_factory=list)
    references: list[Reference] = field(default_factory=list)

    def function(self, name: str) -> FunctionInfo | None:
        return self.functions.get(name)

    def scope_at(self, offset: int) -> Scope:
        """Innermost scope whose region contains ``offset``."""
        best: ScopeRecord | None = None
        for record in self.scopes:
            if not record.span.contains(offset):
                continue
            if best is None or (record.span.end - record.span.start) <= (
                best.span.end - best.span.start
            ):
                best = record
        return best.scope if best else self.module_scope

    def visible_at(self, offset: int) -> list[Symbol]:
        """Symbols a name lookup at ``offset`` would find."""
        return self.scope_at(offset).visible_symbols(offset)

    def reference_at(self, offset: int) -> Reference | None:
        """Narrowest identifier occurrence covering ``offset``."""
        best: Reference | None = None
        for ref in self.references:
            if ref.span.start <= offset < ref.span.end or (
                offset == ref.span.end and ref.span.start < ref.span.end
            ):
                if best is None or (ref.span.end - ref.span.start) < (
                    best.span.end - best.span.start
                ):
                    best = ref
        return best


# =============================================================================
# Analyzer
# =============================================================================


class Analyzer:
    """Single-use analysis pass over one Ast."""

    def __init__(self, tree: ast.Ast) -> None:
        self.tree = tree
        self.diagnostics: list[Diagnostic] = []
        self.module_scope = Scope()
        self.functions: dict[str, FunctionInfo] = {}
        self.scopes: list[ScopeRecord] = []
        self.references: list[Reference] = []
        self.current_function: str | None = None

    def run(self) -> tuple[TypedAst, list[Diagnostic]]:
        self._collect_functions()
        for item in self.tree.qcode_items:
            if isinstance(item, ast.ConstLet):
                self._const(item)
            elif isinstance(item, ast.FnDef):
                self._function(item)
        self._check_definitions()

        typed = TypedAst(
            ast=self.tree,
            functions=self.functions,
            module_scope=self.module_scope,
            scopes=self.scopes,
            references=self.references,
        )
        return typed, sort_diagnostics(self.diagnostics)

    # ===========================================
    # Reporting helpers
    # ===========================================

    def error(self, code: str, message: str, span: SourceSpan) -> None:
        self.diagnostics.append(Diagnostic.error(code, message, span))

    def warning(self, code: str, message: str, span: SourceSpan) -> None:
        self.diagnostics.append(Diagnostic.warning(code, message, span))

    def _open_scope(
        self, parent: Scope, span: SourceSpan, barrier: bool = False
    ) -> Scope:
        scope = parent.child(span=span, barrier=barrier)
        self.scopes.append(ScopeRecord(span, scope))
        return scope

    def _bind(self, scope: Scope, symbol: Symbol, span: SourceSpan) -> None:
        """Define a local, reporting duplicates (E204) and shadowing (W001)."""
        if symbol.name in scope.symbols:
            self.error(
                "E204", f"'{symbol.name}' is already defined in this scope", span
            )
        elif scope.parent is not None:
            outer = scope.parent.resolve(symbol.name).symbol
            if outer is not None and outer.sem_type is not None and not outer.is_assist:
                self.warning(
                    "W001",
                    f"'{symbol.name}' shadows {outer.sem_type.family.value} "
                    f"symbol '{outer.name}'",
                    span,
                )
        scope.define(symbol)
        self.references.append(Reference(span, symbol))

    # ===========================================
    # Top level
    # ===========================================

    def _collect_functions(self) -> None:
        for item in self.tree.qcode_items:
            if not isinstance(item, (ast.FnDecl, ast.FnDef)):
                continue
            if lookup_builtin(item.name) is not None:
                self.error(
                    "E231",
                    f"function '{item.name}' conflicts with a builtin",
                    item.name_span,
                )
                continue
            param_types = [SemType.from_decl(p.type_name) for p in item.params]
            info = self.functions.get(item.name)
            if info is None:
                symbol = Symbol(
                    item.name,
                    None,
                    SymbolKind.FUNCTION,
                    item.name_span,
                    signature=None,
                )
                info = FunctionInfo(item.name, item.params, param_types, symbol)
                symbol.signature = info.signature()
                self.functions[item.name] = info
                self.module_scope.define(symbol)
            elif info.param_types != param_types:
                self.error(
                    "E231",
                    f"conflicting signatures for '{item.name}': "
                    f"{info.signature()} vs {item.name}"
                    f"({', '.join(p.signature() for p in item.params)})",
                    item.name_span,
                )
                continue

            if isinstance(item, ast.FnDef):
                if info.definition is not None:
                    self.error(
                        "E231",
                        f"function '{item.name}' is defined twice",
                        item.name_span,
                    )
                    continue
                info.definition = item
                info.params = item.params
            else:
                info.declarations.append(item)

    def _check_definitions(self) -> None:
        for info in self.functions.values():
            if info.definition is None and info.declarations:
                self.error(
                    "E230",
                    f"function '{info.name}' is declared but never defined",
                    info.declarations[0].name_span,
                )

    def _const(self, item: ast.ConstLet) -> None:
        t = self._expr(item.init, self.module_scope)
        if t is not None and t.is_classical:
            self.error(
                "E201",
                "cannot bind classical value to assist-classical "
                f"constant '{item.name}'",
                item.span,
            )
            t = None
        elif t is not None and t.is_quantum:
            self.error(
                "E202",
                f"top-level constant '{item.name}' cannot hold a quantum value",
                item.span,
            )
            t = None
        if item.name in self.module_scope.symbols:
            self.error("E204", f"'{item.name}' is already defined", item.name_span)
            return
        symbol = Symbol(item.name, t, SymbolKind.TOP_CONST, item.name_span)
        self.module_scope.define(symbol)
        self.references.append(Reference(item.name_span, symbol))

    def _function(self, fn: ast.FnDef) -> None:
        self.current_function = fn.name
        fn_scope = self._open_scope(self.module_scope, fn.span)
        for param in fn.params:
            symbol = Symbol(
                param.name,
                SemType.from_decl(param.type_name),
                SymbolKind.PARAM,
                param.name_span,
                owner=fn.name,
            )
            if param.name in fn_scope.symbols:
                self.error(
                    "E204", f"duplicate parameter '{param.name}'", param.name_span
                )
            fn_scope.define(symbol)
            self.references.append(Reference(param.name_span, symbol))
        self._block(fn.body, fn_scope)
        self.current_function = None

    # ===========================================
    # Statements
    # ===========================================

    def _block(self, block: ast.Block, parent: Scope, barrier: bool = False) -> None:
        scope = self._open_scope(parent, block.span, barrier=barrier)
        for stmt in block.stmts:
            self._stmt(stmt, scope)

    def _stmt(self, stmt: ast.Stmt, scope: Scope) -> None:
        if isinstance(stmt, ast.Let):
            self._let(stmt, scope)
        elif isinstance(stmt, ast.HostDecl):
            self._host_decl(stmt, scope)
        elif isinstance(stmt, ast.HostBlock):
            pass
        elif isinstance(stmt, ast.Assign):
            self._assign(stmt, scope)
        elif isinstance(stmt, ast.ExprStmt):
            if isinstance(stmt.expr, ast.Call):
                self._call(stmt.expr, scope, as_statement=True)
            else:
                self._expr(stmt.expr, scope)
                self.warning("W002", "expression statement has no effect", stmt.span)
        elif isinstance(stmt, (ast.If, ast.While)):
            keyword = "if" if isinstance(stmt, ast.If) else "while"
            self._condition(stmt.cond, scope, keyword, classical=False)
            if isinstance(stmt, ast.If):
                self._block(stmt.then, scope)
                if stmt.orelse is not None:
                    self._block(stmt.orelse, scope)
            else:
                self._block(stmt.body, scope)
        elif isinstance(stmt, ast.For):
            self._for(stmt, scope)
        elif isinstance(stmt, ast.QIf):
            self._condition(stmt.cond, scope, "qif", classical=True)
            self._block(stmt.then, scope, barrier=True)
            if stmt.orelse is not None:
                self._block(stmt.orelse, scope, barrier=True)
        elif isinstance(stmt, ast.QWhile):
            self._condition(stmt.cond, scope, "qwhile", classical=True)
            self._block(stmt.body, scope, barrier=True)

    def _let(self, stmt: ast.Let, scope: Scope) -> None:
        t = self._expr(stmt.init, scope)
        bound: SemType | None = t
        if stmt.decl_type is not None:
            declared = SemType.from_decl(stmt.decl_type)
            bound = declared
            if t is None:
                pass
            elif declared.is_assist:
                if t.is_classical:
                    self.error(
                        "E201",
                        "cannot bind classical value to assist-classical "
                        f"'{stmt.name}'",
                        stmt.span,
                    )
                elif t.is_quantum:
                    self._quantum_misuse(stmt.init)
            elif t != declared:
                self.error(
                    "E102",
                    f"cannot initialize {declared} '{stmt.name}' with a {t} value",
                    stmt.init.span,
                )
        elif t is not None and t.is_classical:
            self.error(
                "E201",
                f"cannot bind classical value to assist-classical '{stmt.name}'",
                stmt.span,
            )
            bound = None
        symbol = Symbol(
            stmt.name,
            bound,
            SymbolKind.LET,
            stmt.name_span,
            owner=self.current_function,
        )
        self._bind(scope, symbol, stmt.name_span)

    def _host_decl(self, stmt: ast.HostDecl, scope: Scope) -> None:
        t = self._value(stmt.init, scope)
        if t is not None and t.is_classical:
            self.error(
                "E201",
                f"cannot bind classical value to assist-classical '{stmt.name}'",
                stmt.span,
            )
        declared = SemType.from_decl(stmt.typename)
        if not declared.is_assist:
            self.error(
                "E102", f"host declaration cannot have type {declared}", stmt.span
            )
            declared = SemType(TypeKind.HOST_OPAQUE, stmt.typename)
        symbol = Symbol(
            stmt.name,
            declared,
            SymbolKind.LET,
            stmt.name_span,
            owner=self.current_function,
        )
        self._bind(scope, symbol, stmt.name_span)

    def _assign(self, stmt: ast.Assign, scope: Scope) -> None:
        target = stmt.target
        region = target.span.cover(stmt.value.span)
        if isinstance(target, ast.Ident):
            tt = self._name(target, scope, region)
            symbol = scope.resolve(target.name).symbol
        else:
            tt = self._expr(target, scope)
            symbol = None

        if tt is None:
            self._value(stmt.value, scope)
            return
        if tt.is_quantum:
            self._expr(stmt.value, scope)
            self.error("E203", "quantum bindings cannot be reassigned", region)
            return
        if symbol is not None and symbol.kind == SymbolKind.TOP_CONST:
            self._value(stmt.value, scope)
            self.error("E102", f"cannot assign to constant '{symbol.name}'", region)
            return
        if tt.kind == TypeKind.CVEC:
            self._value(stmt.value, scope)
            self.error(
                "E102",
                "whole-cvec assignment is not supported; assign elements",
                region,
            )
            return

        vt = self._value(stmt.value, scope)
        if vt is None:
            return
        if vt.is_vector:
            self.error(
                "E102", f"cannot assign a {vt} value to a {tt} target", stmt.value.span
            )
        elif tt.is_assist and vt.is_classical:
            self.error(
                "E201",
                "cannot assign classical value to assist-classical binding",
                region,
            )

    def _for(self, stmt: ast.For, scope: Scope) -> None:
        for bound in (stmt.lo, stmt.hi):
            t = self._value(bound, scope)
            if t is not None and not t.is_assist:
                self.error(
                    "E220",
                    f"for range bounds must be assist-classical, got {t.family.value}",
                    bound.span,
                )
        loop_scope = self._open_scope(scope, stmt.span)
        symbol = Symbol(
            stmt.var,
            ASSIST_INT,
            SymbolKind.LET,
            stmt.var_span,
            owner=self.current_function,
        )
        self._bind(loop_scope, symbol, stmt.var_span)
        self._block(stmt.body, loop_scope)

    def _condition(
        self, cond: ast.Expr, scope: Scope, keyword: str, classical: bool
    ) -> None:
        t = self._value(cond, scope)
        if t is None:
            return
        wanted = "classical" if classical else "assist-classical"
        wrong_family = not t.is_classical if classical else not t.is_assist
        if t.is_vector or wrong_family:
            self.error(
                "E220",
                f"{keyword} condition must be {wanted}, got {t} ({t.family.value})",
                cond.span,
            )

    # ===========================================
    # Expressions
    # ===========================================

    def _quantum_misuse(self, expr: ast.Expr) -> None:
        self.error(
            "E202", "quantum value cannot be used as a classical value", expr.span
        )

    def _value(self, expr: ast.Expr, scope: Scope) -> SemType | None:
        """Type of an expression used as a value; quantum values are rejected."""
        t = self._expr(expr, scope)
        if t is not None and t.is_quantum:
            self._quantum_misuse(expr)
            return None
        return t

    def _expr(self, expr: ast.Expr, scope: Scope) -> SemType | None:
        t = self._infer(expr, scope)
        expr.sem_type = t
        return t

    def _name(
        self, ident: ast.Ident, scope: Scope, region: SourceSpan | None = None
    ) -> SemType | None:
        resolution = scope.resolve(ident.name)
        symbol = resolution.symbol
        ident.sem_type = None
        if symbol is not None:
            self.references.append(Reference(ident.span, symbol))
            if symbol.kind == SymbolKind.FUNCTION:
                self.error(
                    "E102", f"function '{ident.name}' used as a value", ident.span
                )
                return None
            ident.sem_type = symbol.sem_type
            return symbol.sem_type
        if resolution.blocked is not None:
            self.error(
                "E210",
                f"assist-classical '{ident.name}' is not inherited "
                "by qif/qwhile bodies",
                region or ident.span,
            )
            return None
        builtin = lookup_builtin(ident.name)
        if builtin is not None:
            self.references.append(Reference(ident.span, builtin=builtin))
            self.error("E102", f"builtin '{builtin.name}' used as a value", ident.span)
            return None
        self.error("E101", f"unknown identifier '{ident.name}'", ident.span)
        return None

    def _infer(self, expr: ast.Expr, scope: Scope) -> SemType | None:
        if isinstance(expr, ast.IntLit):
            return ASSIST_INT
        if isinstance(expr, ast.FloatLit):
            return ASSIST_FLOAT
        if isinstance(expr, ast.BoolLit):
            return ASSIST_BOOL
        if isinstance(expr, ast.Ident):
            return self._name(expr, scope)
        if isinstance(expr, ast.Index):
            return self._index(expr, scope)
        if isinstance(expr, ast.Slice):
            return self._slice(expr, scope)
        if isinstance(expr, ast.Len):
            t = self._expr(expr.arg, scope)
            if t is not None and not t.is_vector:
                self.error(
                    "E102", f"len expects a qvec or cvec, got {t}", expr.arg.span
                )
            return ASSIST_INT
        if isinstance(expr, ast.Call):
            self._call(expr, scope, as_statement=False)
            return None
        if isinstance(expr, ast.Unary):
            return self._unary(expr, scope)
        if isinstance(expr, ast.Binary):
            return self._binary(expr, scope)
        return None

    def _subscript(self, value: ast.Expr, scope: Scope, base_type: SemType) -> None:
        t = self._value(value, scope)
        if t is None:
            return
        if t.is_classical:
            self.error(
                "E102",
                f"{base_type} index must be assist-classical, got {t}",
                value.span,
            )
        elif t.kind == TypeKind.ASSIST_FLOAT:
            self.error("E102", "index must be an integer", value.span)

    def _vector_base(self, base: ast.Expr, scope: Scope) -> SemType | None:
        bt = self._expr(base, scope)
        if bt is not None and not bt.is_vector:
            self.error("E102", f"cannot index a {bt} value", base.span)
            return None
        return bt

    def _index(self, expr: ast.Index, scope: Scope) -> SemType | None:
        bt = self._vector_base(expr.base, scope)
        self._subscript(expr.index, scope, bt or ASSIST_INT)
        return bt.element() if bt is not None else None

    def _slice(self, expr: ast.Slice, scope: Scope) -> SemType | None:
        bt = self._vector_base(expr.base, scope)
        self._subscript(expr.lo, scope, bt or ASSIST_INT)
        self._subscript(expr.hi, scope, bt or ASSIST_INT)
        return bt

    def _unary(self, expr: ast.Unary, scope: Scope) -> SemType | None:
        t = self._value(expr.operand, scope)
        if t is None:
            return None
        if t.is_vector:
            self.error("E102", f"operator '{expr.op}' cannot apply to {t}", expr.span)
            return None
        if t.is_classical:
            return CBIT
        if expr.op == "!":
            return ASSIST_BOOL if t.kind != TypeKind.HOST_OPAQUE else t
        return ASSIST_INT if t.kind == TypeKind.ASSIST_BOOL else t

    def _binary(self, expr: ast.Binary, scope: Scope) -> SemType | None:
        lt = self._value(expr.left, scope)
        rt = self._value(expr.right, scope)
        if lt is None or rt is None:
            return None
        for side, t in ((expr.left, lt), (expr.right, rt)):
            if t.is_vector:
                self.error(
                    "E102", f"operator '{expr.op}' cannot apply to {t}", side.span
                )
                return None
        if lt.is_classical or rt.is_classical:
            return CBIT
        if lt.kind == TypeKind.HOST_OPAQUE:
            return lt
        if rt.kind == TypeKind.HOST_OPAQUE:
            return rt
        if expr.op in COMPARISON_OPS or expr.op in LOGICAL_OPS:
            return ASSIST_BOOL
        is_float = TypeKind.ASSIST_FLOAT in (lt.kind, rt.kind)
        if expr.op == "%" and is_float:
            self.error("E102", "operator '%' requires integer operands", expr.span)
            return None
        return ASSIST_FLOAT if is_float else ASSIST_INT

    # ===========================================
    # Calls
    # ===========================================

    def _call(self, call: ast.Call, scope: Scope, as_statement: bool) -> None:
        builtin = lookup_builtin(call.name)
        if builtin is not None:
            self.references.append(Reference(call.name_span, builtin=builtin))
            self._check_args(
                call,
                scope,
                [p.accepts for p in builtin.params],
                builtin.name,
                [p.label for p in builtin.params],
            )
        else:
            symbol = scope.resolve(call.name).symbol
            info = self.functions.get(call.name)
            if symbol is None or symbol.kind != SymbolKind.FUNCTION or info is None:
                for arg in call.args:
                    self._expr(arg, scope)
                if symbol is None:
                    self.error(
                        "E101", f"unknown function '{call.name}'", call.name_span
                    )
                else:
                    self.references.append(Reference(call.name_span, symbol))
                    self.error(
                        "E102", f"'{call.name}' is not a function", call.name_span
                    )
                return
            self.references.append(Reference(call.name_span, symbol))
            self._check_args(
                call,
                scope,
                [_accepts_param(t) for t in info.param_types],
                call.name,
                [t.describe() for t in info.param_types],
            )
        if not as_statement:
            self.error(
                "E102", f"call to '{call.name}' does not produce a value", call.span
            )

    def _check_args(
        self,
        call: ast.Call,
        scope: Scope,
        accepts: list[TypeCheck],
        name: str,
        labels: list[str],
    ) -> None:
        types = [self._expr(arg, scope) for arg in call.args]
        if len(types) != len(accepts):
            self.error(
                "E102",
                f"{name} expects {len(accepts)} argument(s), got {len(types)}",
                call.span,
            )
            return
        checks = zip(call.args, types, accepts, labels)
        for position, (arg, t, ok, label) in enumerate(checks, 1):
            if t is None:
                continue
            if not ok(t):
                self.error(
                    "E102",
                    f"argument {position} of {name} must be {label}, got {t}",
                    arg.span,
                )
            elif (t.is_quantum or t.is_classical) and not isinstance(
                arg, REFERENCE_NODES
            ):
                self.error(
                    "E102",
                    f"argument {position} of {name} must be a qubit or "
                    f"register reference, not a computed {t} value",
                    arg.span,
                )


def _accepts_param(param_type: SemType) -> TypeCheck:
    """Argument compatibility for a user-function parameter."""
    if param_type.is_assist:
        return lambda t: t.is_assist
    return lambda t: t == param_type


def analyze(tree: ast.Ast) -> tuple[TypedAst, list[Diagnostic]]:
    """
    Type-check a parsed program.

    Args:
        tree: Output of ``parse``

    Returns:
        The typed AST and its diagnostics, sorted by source position
    """
    typed, diagnostics = Analyzer(tree).run()
    logger.debug(f"Analysis finished with {len(diagnostics)} diagnostic(s)")
    return typed, diagnostics
