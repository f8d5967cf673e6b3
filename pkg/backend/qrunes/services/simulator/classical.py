"""
Run-time evaluation of classical expressions on the control device.

Registers are 64-bit signed integers with wrapping arithmetic; division
truncates toward zero and comparisons yield 0 or 1, as in C.
"""

from qrunes.core.exceptions import IndexOutOfRangeError, RuntimeDivisionByZeroError
from qrunes.services.qir.evaluator import c_div, c_mod
from qrunes.services.qir.nodes import CBinary, CExpr, CUnary, IntConst, RegisterRef

_WORD = 1 << 64
_HALF = 1 << 63


def wrap64(value: int) -> int:
    """Reduce to the signed 64-bit range."""
    return ((value + _HALF) % _WORD) - _HALF


def eval_classical(expr: CExpr, registers: list[int]) -> int:
    """
    Evaluate a CExpr against current register values.

    Raises:
        IndexOutOfRangeError: RegisterRef past the last register
        RuntimeDivisionByZeroError: ``/`` or ``%`` by zero
    """
    if isinstance(expr, IntConst):
        return wrap64(expr.value)
    if isinstance(expr, RegisterRef):
        if not 0 <= expr.index < len(registers):
            raise IndexOutOfRangeError("register", expr.index, len(registers))
        return registers[expr.index]
    if isinstance(expr, CUnary):
        value = eval_classical(expr.operand, registers)
        if expr.op == "!":
            return int(value == 0)
        return wrap64(-value)
    if isinstance(expr, CBinary):
        return _binary(expr, registers)
    raise TypeError(f"not a classical expression: {expr!r}")


def _binary(expr: CBinary, registers: list[int]) -> int:
    op = expr.op
    left = eval_classical(expr.left, registers)
    if op == "&&":
        return int(left != 0 and eval_classical(expr.right, registers) != 0)
    if op == "||":
        return int(left != 0 or eval_classical(expr.right, registers) != 0)
    right = eval_classical(expr.right, registers)
    if op in ("/", "%"):
        if right == 0:
            raise RuntimeDivisionByZeroError()
        return wrap64(c_div(left, right) if op == "/" else c_mod(left, right))
    results = {
        "+": lambda: wrap64(left + right),
        "-": lambda: wrap64(left - right),
        "*": lambda: wrap64(left * right),
        "==": lambda: int(left == right),
        "!=": lambda: int(left != right),
        "<": lambda: int(left < right),
        "<=": lambda: int(left <= right),
        ">": lambda: int(left > right),
        ">=": lambda: int(left >= right),
    }
    return results[op]()
