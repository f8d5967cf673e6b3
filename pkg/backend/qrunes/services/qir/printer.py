"""
Canonical text rendering of QProgIR.

One node per line, two spaces of indentation per nesting level:

    H q0
    CNOT q0, q1
    RX(0.908) q0
    MEASURE q0 -> r0
    r1 = r1 + 1
    QIF r0 == 1
      H q0
    QELSE
      NOT q0
    END
    QWHILE r0
      ...
    END
"""

from qrunes.services.qir.nodes import (
    CBinary,
    ClassicalOp,
    CExpr,
    CUnary,
    Gate,
    IntConst,
    MeasureNode,
    QIfNode,
    QProgIR,
    QWhileNode,
    RegisterRef,
)

INDENT = "  "


def cexpr_to_text(expr: CExpr, nested: bool = False) -> str:
    """Render a CExpr; nested binary operations are parenthesized."""
    if isinstance(expr, RegisterRef):
        return f"r{expr.index}"
    if isinstance(expr, IntConst):
        return str(expr.value)
    if isinstance(expr, CUnary):
        return f"{expr.op}{cexpr_to_text(expr.operand, nested=True)}"
    text = (
        f"{cexpr_to_text(expr.left, nested=True)} {expr.op} "
        f"{cexpr_to_text(expr.right, nested=True)}"
    )
    return f"({text})" if nested else text


def _gate_text(gate: Gate) -> str:
    params = f"({', '.join(repr(p) for p in gate.params)})" if gate.params else ""
    targets = ", ".join(f"q{t}" for t in gate.targets)
    return f"{gate.name}{params} {targets}"


def _render(ir: QProgIR, depth: int, lines: list[str]) -> None:
    pad = INDENT * depth
    for node in ir.nodes:
        if isinstance(node, Gate):
            lines.append(pad + _gate_text(node))
        elif isinstance(node, MeasureNode):
            lines.append(f"{pad}MEASURE q{node.qubit} -> r{node.register}")
        elif isinstance(node, ClassicalOp):
            lines.append(f"{pad}r{node.register} = {cexpr_to_text(node.rhs)}")
        elif isinstance(node, QIfNode):
            lines.append(f"{pad}QIF {cexpr_to_text(node.cond)}")
            _render(node.then, depth + 1, lines)
            if node.qelse.nodes:
                lines.append(f"{pad}QELSE")
                _render(node.qelse, depth + 1, lines)
            lines.append(f"{pad}END")
        elif isinstance(node, QWhileNode):
            lines.append(f"{pad}QWHILE {cexpr_to_text(node.cond)}")
            _render(node.body, depth + 1, lines)
            lines.append(f"{pad}END")


def ir_to_text(ir: QProgIR) -> str:
    """Render ``ir``; lines are joined with newlines, no trailing newline."""
    lines: list[str] = []
    _render(ir, 0, lines)
    return "\n".join(lines)
