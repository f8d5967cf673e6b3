"""
Statevector state and the gate/measurement kernels.

Qubit 0 is the least-significant bit of the basis-state index. Every
operation mutates the state in place and returns it.
"""

from dataclasses import dataclass, field

import numpy as np

from qrunes.core.exceptions import DuplicateTargetError, IndexOutOfRangeError
from qrunes.services.qir.nodes import Gate

_SQRT_HALF = 1.0 / np.sqrt(2.0)

FIXED_GATES: dict[str, np.ndarray] = {
    "H": np.array([[1, 1], [1, -1]], dtype=np.complex128) * _SQRT_HALF,
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
}
FIXED_GATES["NOT"] = FIXED_GATES["X"]


def rx_matrix(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=np.complex128)


@dataclass
class SimState:
    """Amplitudes plus the control device's integer registers."""

    n_qubits: int
    amplitudes: np.ndarray
    registers: list[int]
    rng: np.random.Generator = field(repr=False)

    @classmethod
    def fresh(
        cls, n_qubits: int, n_registers: int, rng: np.random.Generator
    ) -> "SimState":
        """|0...0> with zeroed registers."""
        amplitudes = np.zeros(2**n_qubits, dtype=np.complex128)
        amplitudes[0] = 1.0
        return cls(n_qubits, amplitudes, [0] * n_registers, rng)

    def norm(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def check_qubit(self, q: int) -> None:
        if not 0 <= q < self.n_qubits:
            raise IndexOutOfRangeError("qubit", q, self.n_qubits)

    def check_register(self, r: int) -> None:
        if not 0 <= r < len(self.registers):
            raise IndexOutOfRangeError("register", r, len(self.registers))


def _apply_single(state: SimState, matrix: np.ndarray, q: int) -> None:
    n = state.n_qubits
    psi = state.amplitudes.reshape((2,) * n)
    axis = n - 1 - q
    psi = np.tensordot(matrix, psi, axes=([1], [axis]))
    state.amplitudes = np.moveaxis(psi, 0, axis).reshape(-1)


def _apply_cnot(state: SimState, control: int, target: int) -> None:
    index = np.arange(state.amplitudes.size)
    flip = ((index >> control) & 1 == 1) & ((index >> target) & 1 == 0)
    low = index[flip]
    high = low | (1 << target)
    amps = state.amplitudes
    amps[low], amps[high] = amps[high].copy(), amps[low].copy()


def apply_gate(state: SimState, gate: Gate) -> SimState:
    """
    Multiply the statevector by a gate's unitary.

    Args:
        state: State to update
        gate: H, X, Y, NOT, CNOT or RX node

    Returns:
        The same state, updated

    Raises:
        IndexOutOfRangeError: A target index past the last qubit
        DuplicateTargetError: CNOT with control == target
    """
    for q in gate.targets:
        state.check_qubit(q)
    if len(set(gate.targets)) != len(gate.targets):
        raise DuplicateTargetError(gate.name, gate.targets)

    if gate.name == "CNOT":
        _apply_cnot(state, *gate.targets)
    elif gate.name == "RX":
        _apply_single(state, rx_matrix(gate.params[0]), gate.targets[0])
    else:
        _apply_single(state, FIXED_GATES[gate.name], gate.targets[0])
    return state


def outcome_probabilities(state: SimState, q: int) -> tuple[float, float]:
    """Born probabilities of reading 0 and 1 on qubit ``q``."""
    state.check_qubit(q)
    probs = np.abs(state.amplitudes) ** 2
    ones = (np.arange(probs.size) >> q) & 1 == 1
    p1 = float(probs[ones].sum())
    return float(probs[~ones].sum()), p1


def measure_qubit(state: SimState, q: int, r: int) -> SimState:
    """Sample, project and renormalize; write the outcome to register ``r``."""
    state.check_register(r)
    p0, p1 = outcome_probabilities(state, q)
    outcome = 1 if state.rng.random() < p1 / (p0 + p1) else 0

    ones = (np.arange(state.amplitudes.size) >> q) & 1 == 1
    keep = ones if outcome else ~ones
    state.amplitudes[~keep] = 0.0
    state.amplitudes /= np.sqrt(p1 if outcome else p0)
    state.registers[r] = outcome
    return state
