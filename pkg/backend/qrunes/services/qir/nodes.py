"""
Quantum IR node types.

A QProgIR is a flat sequence of gates, measurements and classical register
operations, with QIf/QWhile nodes nesting sub-programs whose conditions are
classical expressions over register values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Union

from qrunes.services.frontend.tokens import SourceSpan

# =============================================================================
# Classical expressions (evaluated by the control device)
# =============================================================================


@dataclass(frozen=True)
class RegisterRef:
    index: int


@dataclass(frozen=True)
class IntConst:
    value: int


@dataclass(frozen=True)
class CUnary:
    op: str
    operand: CExpr


@dataclass(frozen=True)
class CBinary:
    op: str
    left: CExpr
    right: CExpr


CExpr = Union[RegisterRef, IntConst, CUnary, CBinary]


def cexpr_leaves(expr: CExpr) -> Iterator[CExpr]:
    """Yield every RegisterRef and IntConst in ``expr``."""
    if isinstance(expr, CUnary):
        yield from cexpr_leaves(expr.operand)
    elif isinstance(expr, CBinary):
        yield from cexpr_leaves(expr.left)
        yield from cexpr_leaves(expr.right)
    else:
        yield expr


# =============================================================================
# Program nodes
# =============================================================================


@dataclass(frozen=True)
class Gate:
    name: str
    targets: tuple[int, ...]
    params: tuple[float, ...] = ()


@dataclass(frozen=True)
class MeasureNode:
    qubit: int
    register: int


@dataclass(frozen=True)
class ClassicalOp:
    """``registers[register] = rhs`` executed on the control device."""

    register: int
    rhs: CExpr


@dataclass(frozen=True)
class QIfNode:
    cond: CExpr
    then: QProgIR
    qelse: QProgIR


@dataclass(frozen=True)
class QWhileNode:
    cond: CExpr
    body: QProgIR
    span: SourceSpan | None = field(default=None, compare=False, repr=False)


IRNode = Union[Gate, MeasureNode, ClassicalOp, QIfNode, QWhileNode]


@dataclass(frozen=True)
class MachineLayout:
    """Qubit count and register names fixed by the entry bindings."""

    n_qubits: int
    register_names: tuple[str, ...]

    @property
    def n_registers(self) -> int:
        return len(self.register_names)


@dataclass(frozen=True)
class QProgIR:
    """An elaborated program; ``layout`` is set on the top-level program only."""

    nodes: tuple[IRNode, ...] = ()
    layout: MachineLayout | None = field(default=None, compare=False)

    def __len__(self) -> int:
        return len(self.nodes)

    def __iter__(self) -> Iterator[IRNode]:
        return iter(self.nodes)

    def walk(self) -> Iterator[IRNode]:
        """Every node, depth-first, including those nested in QIf/QWhile."""
        for node in self.nodes:
            yield node
            if isinstance(node, QIfNode):
                yield from node.then.walk()
                yield from node.qelse.walk()
            elif isinstance(node, QWhileNode):
                yield from node.body.walk()

    def conditions(self) -> Iterator[CExpr]:
        """Every classical expression appearing in the program."""
        for node in self.walk():
            if isinstance(node, ClassicalOp):
                yield node.rhs
            elif isinstance(node, (QIfNode, QWhileNode)):
                yield node.cond

    def qubit_count(self) -> int:
        """Qubits needed: the layout's count, or one past the highest index used."""
        if self.layout is not None:
            return self.layout.n_qubits
        highest = -1
        for node in self.walk():
            if isinstance(node, Gate):
                highest = max([highest, *node.targets])
            elif isinstance(node, MeasureNode):
                highest = max(highest, node.qubit)
        return highest + 1

    def register_count(self) -> int:
        if self.layout is not None:
            return self.layout.n_registers
        highest = -1
        for node in self.walk():
            if isinstance(node, MeasureNode):
                highest = max(highest, node.register)
            elif isinstance(node, ClassicalOp):
                highest = max(highest, node.register)
        for expr in self.conditions():
            for leaf in cexpr_leaves(expr):
                if isinstance(leaf, RegisterRef):
                    highest = max(highest, leaf.index)
        return highest + 1
