"""
Elaboration: typed AST + entry bindings -> flat quantum IR.

Assist-classical code runs here, at compile time: ``for``/``while``/``if``
are unrolled or resolved, calls are inlined and constants folded. Only
``qif``/``qwhile`` survive as run-time control flow, with both branches
always materialized.
"""

from dataclasses import dataclass, field
from typing import Any

from qrunes.core import logger, settings
from qrunes.core.exceptions import (
    BindingError,
    HostConstructError,
    MeasureAllSizeError,
    RecursionCycleError,
    RuntimeValueError,
    UnboundNameError,
    UnrollBudgetError,
)
from qrunes.services.frontend import ast
from qrunes.services.frontend.tokens import SourceSpan
from qrunes.services.qir.bindings import (
    BindingEnv,
    QubitRef,
    QubitVec,
    RegRef,
    RegVec,
    bind_arguments,
    coerce_assist,
)
from qrunes.services.qir.evaluator import (
    apply_assist_binary,
    eval_assist,
    eval_reference,
    lower_classical,
)
from qrunes.services.qir.nodes import (
    CBinary,
    ClassicalOp,
    Gate,
    IRNode,
    MachineLayout,
    MeasureNode,
    QIfNode,
    QProgIR,
    QWhileNode,
    RegisterRef,
)
from qrunes.services.semantics.analyzer import TypedAst
from qrunes.services.semantics.builtins import lookup_builtin
from qrunes.services.semantics.types import SemType


@dataclass(frozen=True)
class ElabLimits:
    """Resource limits for one elaboration."""

    max_unroll: int = field(default_factory=lambda: settings.max_unroll)


class Elaborator:
    """Single-use elaboration of one entry function."""

    def __init__(self, program: TypedAst, limits: ElabLimits | None = None) -> None:
        self.program = program
        self.limits = limits or ElabLimits()
        self.executed = 0
        self.call_stack: list[str] = []
        self.globals = BindingEnv()

    def elaborate(
        self, entry: str, args: BindingEnv, layout: MachineLayout | None = None
    ) -> QProgIR:
        for const in self.program.ast.constants:
            self.globals.bind(const.name, eval_assist(const.init, self.globals))
        entry_env = self.globals.child()
        entry_env.values.update(args.values)
        nodes = self._function(entry, entry_env, None)
        return QProgIR(tuple(nodes), layout)

    # ===========================================
    # Functions and blocks
    # ===========================================

    def _function(
        self, name: str, env: BindingEnv, call_span: SourceSpan | None
    ) -> list[IRNode]:
        if name in self.call_stack:
            cycle = self.call_stack[self.call_stack.index(name) :] + [name]
            raise RecursionCycleError(call_span, cycle)
        info = self.program.function(name)
        if info is None or info.definition is None:
            raise BindingError(f"function '{name}' has no definition", name)
        self.call_stack.append(name)
        try:
            return self._block(info.definition.body, env)
        finally:
            self.call_stack.pop()

    def _block(self, block: ast.Block, env: BindingEnv) -> list[IRNode]:
        out: list[IRNode] = []
        for stmt in block.stmts:
            self._stmt(stmt, env, out)
        return out

    def _tick(self, span: SourceSpan) -> None:
        self.executed += 1
        if self.executed > self.limits.max_unroll:
            raise UnrollBudgetError(span, self.limits.max_unroll)

    # ===========================================
    # Statements
    # ===========================================

    def _stmt(self, stmt: ast.Stmt, env: BindingEnv, out: list[IRNode]) -> None:
        self._tick(stmt.span)
        if isinstance(stmt, ast.Let):
            self._let(stmt, env)
        elif isinstance(stmt, (ast.HostDecl, ast.HostBlock)):
            raise HostConstructError(stmt.span)
        elif isinstance(stmt, ast.Assign):
            self._assign(stmt, env, out)
        elif isinstance(stmt, ast.ExprStmt):
            if isinstance(stmt.expr, ast.Call):
                self._call(stmt.expr, env, out)
        elif isinstance(stmt, ast.If):
            if eval_assist(stmt.cond, env):
                out.extend(self._block(stmt.then, env.child()))
            elif stmt.orelse is not None:
                out.extend(self._block(stmt.orelse, env.child()))
        elif isinstance(stmt, ast.While):
            while eval_assist(stmt.cond, env):
                self._tick(stmt.span)
                out.extend(self._block(stmt.body, env.child()))
        elif isinstance(stmt, ast.For):
            lo = int(eval_assist(stmt.lo, env))
            hi = int(eval_assist(stmt.hi, env))
            for i in range(lo, hi):
                self._tick(stmt.span)
                loop_env = env.child()
                loop_env.bind(stmt.var, i)
                out.extend(self._block(stmt.body, loop_env))
        elif isinstance(stmt, ast.QIf):
            cond = lower_classical(stmt.cond, env)
            then = self._block(stmt.then, env.child())
            qelse = self._block(stmt.orelse, env.child()) if stmt.orelse else []
            out.append(QIfNode(cond, QProgIR(tuple(then)), QProgIR(tuple(qelse))))
        elif isinstance(stmt, ast.QWhile):
            cond = lower_classical(stmt.cond, env)
            body = self._block(stmt.body, env.child())
            out.append(QWhileNode(cond, QProgIR(tuple(body)), span=stmt.span))

    def _let(self, stmt: ast.Let, env: BindingEnv) -> None:
        declared = SemType.from_decl(stmt.decl_type) if stmt.decl_type else None
        init_type = stmt.init.sem_type
        if (declared is not None and not declared.is_assist) or (
            declared is None and init_type is not None and not init_type.is_assist
        ):
            # alias: resolved to indices, no IR emitted
            env.bind(stmt.name, eval_reference(stmt.init, env))
            return
        value = eval_assist(stmt.init, env)
        env.bind(stmt.name, coerce_assist(declared, value) if declared else value)

    def _assign(self, stmt: ast.Assign, env: BindingEnv, out: list[IRNode]) -> None:
        target_type = stmt.target.sem_type
        if target_type is not None and target_type.is_classical:
            ref = eval_reference(stmt.target, env)
            if not isinstance(ref, RegRef):
                raise UnboundNameError(stmt.target.span, "classical register")
            rhs = lower_classical(stmt.value, env)
            if stmt.op != "=":
                rhs = CBinary(stmt.op[0], RegisterRef(ref.index), rhs)
            out.append(ClassicalOp(ref.index, rhs))
            return

        if not isinstance(stmt.target, ast.Ident):
            raise UnboundNameError(stmt.target.span, "assignment target")
        value = eval_assist(stmt.value, env)
        if stmt.op != "=":
            current = eval_assist(stmt.target, env)
            value = apply_assist_binary(stmt.op[0], current, value, stmt.span)
        try:
            env.assign(stmt.target.name, value)
        except KeyError:
            raise UnboundNameError(stmt.target.span, stmt.target.name) from None

    # ===========================================
    # Calls
    # ===========================================

    def _qubit(self, expr: ast.Expr, env: BindingEnv) -> int:
        ref = eval_reference(expr, env)
        if not isinstance(ref, QubitRef):
            raise UnboundNameError(expr.span, "qubit argument")
        return ref.index

    def _call(self, call: ast.Call, env: BindingEnv, out: list[IRNode]) -> None:
        builtin = lookup_builtin(call.name)
        if builtin is None:
            self._inline(call, env, out)
            return

        name = builtin.name
        if name in ("H", "X", "Y", "NOT"):
            out.append(Gate(name, (self._qubit(call.args[0], env),)))
        elif name == "CNOT":
            targets = (self._qubit(call.args[0], env), self._qubit(call.args[1], env))
            out.append(Gate(name, targets))
        elif name == "RX":
            angle = call.args[1]
            if angle.sem_type is not None and angle.sem_type.is_classical:
                raise RuntimeValueError(angle.span, "RX angle")
            theta = float(eval_assist(angle, env))
            out.append(Gate(name, (self._qubit(call.args[0], env),), (theta,)))
        elif name == "Measure":
            reg = eval_reference(call.args[1], env)
            if not isinstance(reg, RegRef):
                raise UnboundNameError(call.args[1].span, "cbit argument")
            out.append(MeasureNode(self._qubit(call.args[0], env), reg.index))
        elif name == "MeasureAll":
            qubits = eval_reference(call.args[0], env)
            regs = eval_reference(call.args[1], env)
            if not isinstance(qubits, QubitVec) or not isinstance(regs, RegVec):
                raise UnboundNameError(call.span, "MeasureAll arguments")
            if len(qubits) != len(regs):
                raise MeasureAllSizeError(call.span, len(qubits), len(regs))
            for q, r in zip(qubits.indices, regs.indices):
                out.append(MeasureNode(q, r))

    def _inline(self, call: ast.Call, env: BindingEnv, out: list[IRNode]) -> None:
        info = self.program.function(call.name)
        if info is None:
            raise UnboundNameError(call.name_span, call.name)
        callee = self.globals.child()
        for param, ptype, arg in zip(info.params, info.param_types, call.args):
            if ptype.is_assist:
                callee.bind(param.name, coerce_assist(ptype, eval_assist(arg, env)))
            else:
                callee.bind(param.name, eval_reference(arg, env))
        out.extend(self._function(call.name, callee, call.span))


def elaborate(
    program: TypedAst,
    entry: str,
    args: BindingEnv,
    limits: ElabLimits | None = None,
    layout: MachineLayout | None = None,
) -> QProgIR:
    """
    Elaborate ``entry`` with concrete bindings into a QProgIR.

    Args:
        program: Analyzed program with zero errors
        entry: Name of the entry function
        args: Bindings for every entry parameter
        limits: Unroll budget; defaults come from settings
        layout: Machine layout to attach to the result

    Returns:
        The flat program

    Raises:
        ElaborationError: E240-E248
    """
    ir = Elaborator(program, limits).elaborate(entry, args, layout)
    logger.debug(f"Elaborated '{entry}' into {len(ir)} top-level node(s)")
    return ir


def elaborate_entry(
    program: TypedAst,
    entry: str,
    raw_args: dict[str, Any],
    limits: ElabLimits | None = None,
) -> QProgIR:
    """Bind run-configuration arguments, then elaborate."""
    info = program.function(entry)
    if info is None or info.definition is None:
        raise BindingError(f"entry function '{entry}' is not defined", entry)
    env, layout = bind_arguments(entry, info.params, raw_args)
    return elaborate(program, entry, env, limits, layout)
