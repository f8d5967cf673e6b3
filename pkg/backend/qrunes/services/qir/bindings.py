"""
Binding environments for elaboration.

Quantum parameters bind to concrete qubit indices, classical parameters to
register indices and assist-classical parameters to constant values.
Indices are handed out left to right within each family.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Union

from qrunes.core.exceptions import BindingError
from qrunes.services.frontend.ast import Param
from qrunes.services.qir.nodes import MachineLayout
from qrunes.services.semantics.types import SemType, TypeKind


@dataclass(frozen=True)
class QubitRef:
    index: int


@dataclass(frozen=True)
class QubitVec:
    indices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.indices)


@dataclass(frozen=True)
class RegRef:
    index: int


@dataclass(frozen=True)
class RegVec:
    indices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.indices)


AssistValue = Union[int, float, bool]
Value = Union[AssistValue, QubitRef, QubitVec, RegRef, RegVec]


class BindingEnv:
    """Name -> value map chained to an enclosing environment."""

    def __init__(self, parent: BindingEnv | None = None) -> None:
        self.parent = parent
        self.values: dict[str, Value] = {}

    def child(self) -> BindingEnv:
        return BindingEnv(parent=self)

    def bind(self, name: str, value: Value) -> None:
        self.values[name] = value

    def find(self, name: str) -> BindingEnv | None:
        env: BindingEnv | None = self
        while env is not None:
            if name in env.values:
                return env
            env = env.parent
        return None

    def lookup(self, name: str) -> Value:
        """Raises KeyError when the name is unbound."""
        env = self.find(name)
        if env is None:
            raise KeyError(name)
        return env.values[name]

    def assign(self, name: str, value: Value) -> None:
        """Update the innermost existing binding."""
        env = self.find(name)
        if env is None:
            raise KeyError(name)
        env.values[name] = value

    def __contains__(self, name: str) -> bool:
        return self.find(name) is not None


def coerce_assist(type_: SemType, value: Any) -> AssistValue:
    """Convert a value to an assist-classical parameter or declared local type."""
    if type_.kind == TypeKind.ASSIST_INT:
        return int(value)
    if type_.kind == TypeKind.ASSIST_FLOAT:
        return float(value)
    if type_.kind == TypeKind.ASSIST_BOOL:
        return bool(value)
    return value


def bind_arguments(
    entry: str,
    params: list[Param],
    args: dict[str, Any],
) -> tuple[BindingEnv, MachineLayout]:
    """
    Bind entry-function arguments from a run configuration.

    Args:
        entry: Entry function name, for error messages
        params: Entry parameter list
        args: Parameter name -> size (qvec/cvec), 1 (qubit/cbit) or value

    Returns:
        The entry BindingEnv and the machine layout it implies

    Raises:
        BindingError: Missing, unknown or ill-typed arguments
    """
    known = {p.name for p in params}
    unknown = sorted(set(args) - known)
    if unknown:
        raise BindingError(
            f"unknown argument(s) for {entry}: {', '.join(unknown)}", entry
        )
    missing = [p.name for p in params if p.name not in args]
    if missing:
        raise BindingError(
            f"missing argument(s) for {entry}: {', '.join(missing)}", entry
        )

    env = BindingEnv()
    next_qubit = 0
    register_names: list[str] = []

    for param in params:
        type_ = SemType.from_decl(param.type_name)
        raw = args[param.name]
        if type_.kind in (TypeKind.QUBIT, TypeKind.CBIT):
            if _as_size(raw) != 1:
                raise BindingError(
                    f"'{param.name}' is a single {type_} and must be bound to 1", entry
                )
            if type_.kind == TypeKind.QUBIT:
                env.bind(param.name, QubitRef(next_qubit))
                next_qubit += 1
            else:
                env.bind(param.name, RegRef(len(register_names)))
                register_names.append(param.name)
        elif type_.kind in (TypeKind.QVEC, TypeKind.CVEC):
            size = _as_size(raw)
            if size is None:
                raise BindingError(
                    f"'{param.name}' needs a non-negative integer size", entry
                )
            if type_.kind == TypeKind.QVEC:
                qubits = tuple(range(next_qubit, next_qubit + size))
                env.bind(param.name, QubitVec(qubits))
                next_qubit += size
            else:
                first = len(register_names)
                env.bind(param.name, RegVec(tuple(range(first, first + size))))
                register_names.extend(f"{param.name}[{i}]" for i in range(size))
        else:
            env.bind(param.name, _assist_argument(entry, param, type_, raw))

    return env, MachineLayout(next_qubit, tuple(register_names))


def _as_size(raw: Any) -> int | None:
    if isinstance(raw, bool) or not isinstance(raw, int) or raw < 0:
        return None
    return raw


def _assist_argument(entry: str, param: Param, type_: SemType, raw: Any) -> AssistValue:
    ok = {
        TypeKind.ASSIST_INT: isinstance(raw, int) and not isinstance(raw, bool),
        TypeKind.ASSIST_FLOAT: (
            isinstance(raw, (int, float)) and not isinstance(raw, bool)
        ),
        TypeKind.ASSIST_BOOL: isinstance(raw, bool),
        TypeKind.HOST_OPAQUE: isinstance(raw, (int, float, bool)),
    }[type_.kind]
    if not ok:
        raise BindingError(
            f"'{param.name}' expects a {type_} value, got {raw!r}", entry
        )
    return coerce_assist(type_, raw)
