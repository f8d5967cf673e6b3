"""
Quantum IR: node types, compile-time evaluation, elaboration and printing.
"""

from qrunes.services.qir.bindings import (
    BindingEnv,
    QubitRef,
    QubitVec,
    RegRef,
    RegVec,
    bind_arguments,
)
from qrunes.services.qir.elaborator import (
    ElabLimits,
    Elaborator,
    elaborate,
    elaborate_entry,
)
from qrunes.services.qir.evaluator import eval_assist, eval_reference, lower_classical
from qrunes.services.qir.nodes import (
    CBinary,
    ClassicalOp,
    CExpr,
    CUnary,
    Gate,
    IntConst,
    IRNode,
    MachineLayout,
    MeasureNode,
    QIfNode,
    QProgIR,
    QWhileNode,
    RegisterRef,
)
from qrunes.services.qir.printer import cexpr_to_text, ir_to_text

__all__ = [
    # Nodes
    "CBinary",
    "ClassicalOp",
    "CExpr",
    "CUnary",
    "Gate",
    "IntConst",
    "IRNode",
    "MachineLayout",
    "MeasureNode",
    "QIfNode",
    "QProgIR",
    "QWhileNode",
    "RegisterRef",
    # Bindings
    "BindingEnv",
    "QubitRef",
    "QubitVec",
    "RegRef",
    "RegVec",
    "bind_arguments",
    # Evaluation
    "eval_assist",
    "eval_reference",
    "lower_classical",
    "ElabLimits",
    "Elaborator",
    "elaborate",
    "elaborate_entry",
    # Printing
    "cexpr_to_text",
    "ir_to_text",
]
