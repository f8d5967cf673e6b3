"""
Built-in gates and measurements.

Names resolve case-insensitively (``Measure`` and ``measure`` are the
same builtin); the canonical spelling is the one used in generated code
and IR text.
"""

from dataclasses import dataclass
from typing import Callable

from qrunes.services.semantics.types import CBIT, CVEC, QUBIT, QVEC, SemType


@dataclass(frozen=True)
class BuiltinParam:
    """One parameter slot of a builtin."""

    label: str
    accepts: Callable[[SemType], bool]


def _exactly(expected: SemType) -> Callable[[SemType], bool]:
    return lambda t: t == expected


def _angle(t: SemType) -> bool:
    return t.is_numeric


@dataclass(frozen=True)
class Builtin:
    """Signature of a builtin callable."""

    name: str
    params: tuple[BuiltinParam, ...]
    category: str  # "gate" or "measurement"

    @property
    def arity(self) -> int:
        return len(self.params)

    def signature(self) -> str:
        """``RX(qubit, angle)``-style signature text."""
        return f"{self.name}({', '.join(p.label for p in self.params)})"

    def hover_text(self) -> str:
        return f"{self.signature()} — builtin {self.category}"


_Q = BuiltinParam("qubit", _exactly(QUBIT))

BUILTINS: dict[str, Builtin] = {
    b.name.lower(): b
    for b in (
        Builtin("H", (_Q,), "gate"),
        Builtin("X", (_Q,), "gate"),
        Builtin("Y", (_Q,), "gate"),
        Builtin("NOT", (_Q,), "gate"),
        Builtin("CNOT", (_Q, _Q), "gate"),
        Builtin("RX", (_Q, BuiltinParam("angle", _angle)), "gate"),
        Builtin("Measure", (_Q, BuiltinParam("cbit", _exactly(CBIT))), "measurement"),
        Builtin(
            "MeasureAll",
            (
                BuiltinParam("qvec", _exactly(QVEC)),
                BuiltinParam("cvec", _exactly(CVEC)),
            ),
            "measurement",
        ),
    )
}


def lookup_builtin(name: str) -> Builtin | None:
    """Find a builtin by case-insensitive name."""
    return BUILTINS.get(name.lower())
