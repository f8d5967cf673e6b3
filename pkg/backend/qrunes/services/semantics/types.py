"""
Semantic types.

Every name and expression is classified into one of three families:
quantum (Qubit, QVec), classical (CBit, CVec, values living in control
device registers) and assist-classical (host scalars folded at compile
time, including opaque host-language types).
"""

from dataclasses import dataclass
from enum import Enum


class TypeKind(str, Enum):
    """Concrete semantic type."""

    QUBIT = "Qubit"
    QVEC = "QVec"
    CBIT = "CBit"
    CVEC = "CVec"
    ASSIST_INT = "AssistInt"
    ASSIST_FLOAT = "AssistFloat"
    ASSIST_BOOL = "AssistBool"
    HOST_OPAQUE = "HostOpaque"


class TypeFamily(str, Enum):
    """The three value families."""

    QUANTUM = "quantum"
    CLASSICAL = "classical"
    ASSIST = "assist-classical"


_FAMILY: dict[TypeKind, TypeFamily] = {
    TypeKind.QUBIT: TypeFamily.QUANTUM,
    TypeKind.QVEC: TypeFamily.QUANTUM,
    TypeKind.CBIT: TypeFamily.CLASSICAL,
    TypeKind.CVEC: TypeFamily.CLASSICAL,
    TypeKind.ASSIST_INT: TypeFamily.ASSIST,
    TypeKind.ASSIST_FLOAT: TypeFamily.ASSIST,
    TypeKind.ASSIST_BOOL: TypeFamily.ASSIST,
    TypeKind.HOST_OPAQUE: TypeFamily.ASSIST,
}

_SOURCE_NAMES: dict[TypeKind, str] = {
    TypeKind.QUBIT: "qubit",
    TypeKind.QVEC: "qvec",
    TypeKind.CBIT: "cbit",
    TypeKind.CVEC: "cvec",
    TypeKind.ASSIST_INT: "int",
    TypeKind.ASSIST_FLOAT: "double",
    TypeKind.ASSIST_BOOL: "bool",
}


@dataclass(frozen=True)
class SemType:
    """A semantic type; ``host_name`` is set only for HostOpaque."""

    kind: TypeKind
    host_name: str | None = None

    @property
    def family(self) -> TypeFamily:
        return _FAMILY[self.kind]

    @property
    def is_quantum(self) -> bool:
        return self.family == TypeFamily.QUANTUM

    @property
    def is_classical(self) -> bool:
        return self.family == TypeFamily.CLASSICAL

    @property
    def is_assist(self) -> bool:
        return self.family == TypeFamily.ASSIST

    @property
    def is_vector(self) -> bool:
        return self.kind in (TypeKind.QVEC, TypeKind.CVEC)

    @property
    def is_numeric(self) -> bool:
        """Usable as a scalar operand in arithmetic."""
        return self.kind in (
            TypeKind.CBIT,
            TypeKind.ASSIST_INT,
            TypeKind.ASSIST_FLOAT,
            TypeKind.ASSIST_BOOL,
            TypeKind.HOST_OPAQUE,
        )

    def element(self) -> "SemType":
        """Type of one element of a vector type."""
        if self.kind == TypeKind.QVEC:
            return QUBIT
        if self.kind == TypeKind.CVEC:
            return CBIT
        raise ValueError(f"{self.describe()} is not a vector type")

    def describe(self) -> str:
        """Source-level type name."""
        if self.kind == TypeKind.HOST_OPAQUE:
            return self.host_name or "host"
        return _SOURCE_NAMES[self.kind]

    def __str__(self) -> str:
        return self.describe()

    @classmethod
    def from_decl(cls, type_name: str) -> "SemType":
        """Map a declared type name; unknown names are host-opaque."""
        for kind, name in _SOURCE_NAMES.items():
            if name == type_name:
                return cls(kind)
        return cls(TypeKind.HOST_OPAQUE, type_name)


QUBIT = SemType(TypeKind.QUBIT)
QVEC = SemType(TypeKind.QVEC)
CBIT = SemType(TypeKind.CBIT)
CVEC = SemType(TypeKind.CVEC)
ASSIST_INT = SemType(TypeKind.ASSIST_INT)
ASSIST_FLOAT = SemType(TypeKind.ASSIST_FLOAT)
ASSIST_BOOL = SemType(TypeKind.ASSIST_BOOL)
