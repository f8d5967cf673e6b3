"""
Compile-time evaluation.

- ``eval_assist`` folds assist-classical expressions with C semantics
- ``eval_reference`` resolves quantum/classical names, elements and slices
  to concrete qubit and register indices
- ``lower_classical`` turns a classical expression into a CExpr, folding
  every assist-classical subexpression to a constant
"""

from qrunes.core.exceptions import (
    DivisionByZeroError,
    IndexRangeError,
    NonIntegralValueError,
    UnboundNameError,
)
from qrunes.services.frontend import ast
from qrunes.services.frontend.tokens import SourceSpan
from qrunes.services.qir.bindings import (
    AssistValue,
    BindingEnv,
    QubitRef,
    QubitVec,
    RegRef,
    RegVec,
    Value,
)
from qrunes.services.qir.nodes import CBinary, CExpr, CUnary, IntConst, RegisterRef

Reference = QubitRef | QubitVec | RegRef | RegVec


def c_div(a: int, b: int) -> int:
    """Integer division truncating toward zero."""
    q = abs(a) // abs(b)
    return q if (a >= 0) == (b >= 0) else -q


def c_mod(a: int, b: int) -> int:
    """Remainder with the sign of the dividend."""
    return a - b * c_div(a, b)


def _numeric(value: AssistValue) -> int | float:
    return int(value) if isinstance(value, bool) else value


def apply_assist_binary(
    op: str,
    left: AssistValue,
    right: AssistValue,
    span: SourceSpan | None = None,
) -> AssistValue:
    """Apply one binary operator to two folded values."""
    if op == "&&":
        return bool(left) and bool(right)
    if op == "||":
        return bool(left) or bool(right)
    a, b = _numeric(left), _numeric(right)
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if op in ("/", "%"):
        if b == 0:
            raise DivisionByZeroError(span)
        if isinstance(a, int) and isinstance(b, int):
            return c_div(a, b) if op == "/" else c_mod(a, b)
        if op == "%":
            return float(c_mod(int(a), int(b)))
        return a / b
    comparisons = {
        "==": a == b,
        "!=": a != b,
        "<": a < b,
        "<=": a <= b,
        ">": a > b,
        ">=": a >= b,
    }
    if op in comparisons:
        return comparisons[op]
    raise ValueError(f"unknown operator {op!r}")


def eval_assist(expr: ast.Expr, env: BindingEnv) -> AssistValue:
    """
    Evaluate an assist-classical expression.

    Args:
        expr: Analyzed expression of assist-classical type
        env: Bindings of every name the expression mentions

    Returns:
        int, float or bool value

    Raises:
        DivisionByZeroError: ``/`` or ``%`` by zero
        UnboundNameError: A name with no binding
    """
    if isinstance(expr, (ast.IntLit, ast.FloatLit, ast.BoolLit)):
        return expr.value
    if isinstance(expr, ast.Ident):
        value = _lookup(expr, env)
        if isinstance(value, (QubitRef, QubitVec, RegRef, RegVec)):
            raise UnboundNameError(expr.span, expr.name)
        return value
    if isinstance(expr, ast.Len):
        ref = eval_reference(expr.arg, env)
        if not isinstance(ref, (QubitVec, RegVec)):
            raise UnboundNameError(expr.arg.span, "len argument")
        return len(ref)
    if isinstance(expr, ast.Unary):
        value = eval_assist(expr.operand, env)
        if expr.op == "!":
            return not value
        return -_numeric(value)
    if isinstance(expr, ast.Binary):
        left = eval_assist(expr.left, env)
        if expr.op == "&&" and not left:
            return False
        if expr.op == "||" and left:
            return True
        right = eval_assist(expr.right, env)
        return apply_assist_binary(expr.op, left, right, expr.span)
    raise UnboundNameError(expr.span, type(expr).__name__)


def eval_index(expr: ast.Expr, env: BindingEnv) -> int:
    """Evaluate an index expression to an integer."""
    return int(_numeric(eval_assist(expr, env)))


def eval_reference(expr: ast.Expr, env: BindingEnv) -> Reference:
    """Resolve a quantum or classical reference to concrete indices."""
    if isinstance(expr, ast.Ident):
        value = _lookup(expr, env)
        if not isinstance(value, (QubitRef, QubitVec, RegRef, RegVec)):
            raise UnboundNameError(expr.span, expr.name)
        return value
    if isinstance(expr, ast.Index):
        base = eval_reference(expr.base, env)
        if not isinstance(base, (QubitVec, RegVec)):
            raise UnboundNameError(expr.base.span, "indexed vector")
        i = eval_index(expr.index, env)
        if not 0 <= i < len(base):
            raise IndexRangeError(expr.span, str(i), len(base))
        if isinstance(base, QubitVec):
            return QubitRef(base.indices[i])
        return RegRef(base.indices[i])
    if isinstance(expr, ast.Slice):
        base = eval_reference(expr.base, env)
        if not isinstance(base, (QubitVec, RegVec)):
            raise UnboundNameError(expr.base.span, "sliced vector")
        lo, hi = eval_index(expr.lo, env), eval_index(expr.hi, env)
        if not 0 <= lo <= hi <= len(base):
            raise IndexRangeError(expr.span, f"{lo}:{hi}", len(base))
        return type(base)(base.indices[lo:hi])
    raise UnboundNameError(expr.span, type(expr).__name__)


def lower_classical(expr: ast.Expr, env: BindingEnv) -> CExpr:
    """Translate a classical expression into a register-level CExpr."""
    sem = expr.sem_type
    if sem is not None and sem.is_assist:
        return _register_constant(eval_assist(expr, env), expr.span)
    if isinstance(expr, (ast.IntLit, ast.FloatLit, ast.BoolLit)):
        return _register_constant(expr.value, expr.span)
    if isinstance(expr, (ast.Ident, ast.Index)):
        if isinstance(expr, ast.Ident):
            value = _lookup(expr, env)
            if not isinstance(value, (QubitRef, QubitVec, RegRef, RegVec)):
                return _register_constant(value, expr.span)
        ref = eval_reference(expr, env)
        if not isinstance(ref, RegRef):
            raise UnboundNameError(expr.span, "classical register")
        return RegisterRef(ref.index)
    if isinstance(expr, ast.Unary):
        return CUnary(expr.op, lower_classical(expr.operand, env))
    if isinstance(expr, ast.Binary):
        return CBinary(
            expr.op, lower_classical(expr.left, env), lower_classical(expr.right, env)
        )
    raise UnboundNameError(expr.span, type(expr).__name__)


def _register_constant(value: AssistValue, span: SourceSpan) -> IntConst:
    number = _numeric(value)
    if isinstance(number, float) and not number.is_integer():
        raise NonIntegralValueError(span, number)
    return IntConst(int(number))


def _lookup(expr: ast.Ident, env: BindingEnv) -> Value:
    try:
        return env.lookup(expr.name)
    except KeyError:
        raise UnboundNameError(expr.span, expr.name) from None
