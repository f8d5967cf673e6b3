"""
Tests for the statevector simulator.

Tests verify correctness by:
1. Comparing gate results with hand-computed amplitudes
2. Checking normalization after every operation in a randomized fuzz
3. Round-tripping self-inverse gates
4. Checking measurement projection and the Born rule
5. Evaluating register expressions with C integer semantics
"""

import numpy as np
import pytest

from qrunes.core.exceptions import (
    DuplicateTargetError,
    IndexOutOfRangeError,
    QWhileLimitExceededError,
    RuntimeDivisionByZeroError,
)
from qrunes.services.qir import (
    CBinary,
    CUnary,
    Gate,
    IntConst,
    RegisterRef,
    elaborate_entry,
)
from qrunes.services.simulator import (
    SimState,
    apply_gate,
    eval_classical,
    measure_qubit,
    outcome_probabilities,
    run_once,
    shot_rng,
    wrap64,
)

SQRT_HALF = 1.0 / np.sqrt(2.0)


def fresh(n_qubits: int, n_registers: int = 1, seed: int = 0) -> SimState:
    return SimState.fresh(n_qubits, n_registers, shot_rng(seed, 0))


def random_state(n_qubits: int, rng: np.random.Generator) -> SimState:
    state = fresh(n_qubits)
    amps = rng.normal(size=2**n_qubits) + 1j * rng.normal(size=2**n_qubits)
    state.amplitudes = amps / np.linalg.norm(amps)
    return state


# ═══════════════════════════════════════════════════════════════════
# Gates
# ═══════════════════════════════════════════════════════════════════


class TestGates:
    """Standard unitaries; qubit 0 is the least-significant bit."""

    def test_initial_state(self):
        state = fresh(3, 2)
        expected = np.zeros(8, dtype=complex)
        expected[0] = 1.0
        np.testing.assert_allclose(state.amplitudes, expected, atol=1e-12)
        assert state.registers == [0, 0]

    def test_h_on_zero(self):
        state = apply_gate(fresh(1), Gate("H", (0,)))
        np.testing.assert_allclose(state.amplitudes, [SQRT_HALF, SQRT_HALF], atol=1e-12)

    def test_x_and_not_agree(self):
        x = apply_gate(fresh(1), Gate("X", (0,)))
        not_ = apply_gate(fresh(1), Gate("NOT", (0,)))
        np.testing.assert_allclose(x.amplitudes, [0, 1], atol=1e-12)
        np.testing.assert_allclose(not_.amplitudes, x.amplitudes, atol=1e-12)

    def test_y_on_zero(self):
        state = apply_gate(fresh(1), Gate("Y", (0,)))
        np.testing.assert_allclose(state.amplitudes, [0, 1j], atol=1e-12)

    def test_rx_pi(self):
        state = apply_gate(fresh(1), Gate("RX", (0,), (np.pi,)))
        np.testing.assert_allclose(state.amplitudes, [0, -1j], atol=1e-12)

    def test_cnot_flips_target_when_control_set(self):
        state = apply_gate(fresh(2), Gate("X", (0,)))
        apply_gate(state, Gate("CNOT", (0, 1)))
        np.testing.assert_allclose(state.amplitudes, [0, 0, 0, 1], atol=1e-12)

    def test_cnot_idle_when_control_clear(self):
        state = apply_gate(fresh(2), Gate("X", (1,)))
        apply_gate(state, Gate("CNOT", (0, 1)))
        np.testing.assert_allclose(state.amplitudes, [0, 0, 1, 0], atol=1e-12)

    def test_single_qubit_gate_on_high_qubit(self):
        state = apply_gate(fresh(3), Gate("X", (2,)))
        assert np.argmax(np.abs(state.amplitudes)) == 4

    def test_bell_state(self):
        state = apply_gate(fresh(2), Gate("H", (0,)))
        apply_gate(state, Gate("CNOT", (0, 1)))
        np.testing.assert_allclose(
            state.amplitudes, [SQRT_HALF, 0, 0, SQRT_HALF], atol=1e-12
        )

    def test_target_out_of_range(self):
        with pytest.raises(IndexOutOfRangeError) as exc_info:
            apply_gate(fresh(2), Gate("H", (2,)))
        assert exc_info.value.code == "E301"

    def test_duplicate_cnot_targets(self):
        with pytest.raises(DuplicateTargetError) as exc_info:
            apply_gate(fresh(2), Gate("CNOT", (1, 1)))
        assert exc_info.value.code == "E302"


class TestRoundTrips:
    """Self-inverse gates restore the prior state within 1e-12."""

    @pytest.mark.parametrize(
        "gate",
        [
            Gate("H", (0,)),
            Gate("H", (2,)),
            Gate("X", (1,)),
            Gate("Y", (3,)),
            Gate("CNOT", (0, 3)),
            Gate("CNOT", (2, 1)),
        ],
    )
    def test_twice_is_identity(self, gate):
        rng = np.random.default_rng(11)
        state = random_state(4, rng)
        before = state.amplitudes.copy()
        apply_gate(apply_gate(state, gate), gate)
        np.testing.assert_allclose(state.amplitudes, before, atol=1e-12)

    def test_rx_inverse(self):
        state = random_state(2, np.random.default_rng(5))
        before = state.amplitudes.copy()
        apply_gate(state, Gate("RX", (1,), (0.908,)))
        apply_gate(state, Gate("RX", (1,), (-0.908,)))
        np.testing.assert_allclose(state.amplitudes, before, atol=1e-12)


class TestNormalizationFuzz:
    """Norm stays within 1e-9 of 1 after every operation."""

    def test_random_sequences(self):
        rng = np.random.default_rng(2024)
        for sequence in range(1000):
            n = int(rng.integers(1, 7))
            state = SimState.fresh(n, n, shot_rng(2024, sequence))
            for _ in range(int(rng.integers(1, 25))):
                choice = int(rng.integers(0, 7))
                q = int(rng.integers(0, n))
                if choice == 0:
                    apply_gate(state, Gate("H", (q,)))
                elif choice == 1:
                    apply_gate(state, Gate("X", (q,)))
                elif choice == 2:
                    apply_gate(state, Gate("Y", (q,)))
                elif choice == 3:
                    apply_gate(state, Gate("RX", (q,), (float(rng.uniform(-7, 7)),)))
                elif choice == 4 and n > 1:
                    target = int((q + rng.integers(1, n)) % n)
                    apply_gate(state, Gate("CNOT", (q, target)))
                else:
                    p0, p1 = outcome_probabilities(state, q)
                    assert abs(p0 + p1 - 1.0) <= 1e-9
                    measure_qubit(state, q, q)
                assert abs(state.norm() - 1.0) <= 1e-9


# ═══════════════════════════════════════════════════════════════════
# Measurement
# ═══════════════════════════════════════════════════════════════════


class TestMeasurement:
    """Sampling, projection and renormalization."""

    def test_born_probabilities_sum_to_one(self):
        state = random_state(3, np.random.default_rng(9))
        for q in range(3):
            p0, p1 = outcome_probabilities(state, q)
            assert abs(p0 + p1 - 1.0) <= 1e-12

    def test_measure_one_is_certain(self):
        state = apply_gate(fresh(1), Gate("X", (0,)))
        before = state.amplitudes.copy()
        measure_qubit(state, 0, 0)
        assert state.registers == [1]
        np.testing.assert_allclose(state.amplitudes, before, atol=1e-12)

    def test_bell_projection(self):
        for seed in range(20):
            state = SimState.fresh(2, 1, shot_rng(seed, 0))
            apply_gate(state, Gate("H", (0,)))
            apply_gate(state, Gate("CNOT", (0, 1)))
            measure_qubit(state, 0, 0)
            expected = [1, 0, 0, 0] if state.registers[0] == 0 else [0, 0, 0, 1]
            np.testing.assert_allclose(state.amplitudes, expected, atol=1e-12)

    @pytest.mark.statistical
    def test_h_fraction_of_ones(self):
        ones = 0
        for shot in range(1000):
            state = SimState.fresh(1, 1, shot_rng(42, shot))
            apply_gate(state, Gate("H", (0,)))
            ones += measure_qubit(state, 0, 0).registers[0]
        assert 0.45 <= ones / 1000 <= 0.55

    def test_register_out_of_range(self):
        with pytest.raises(IndexOutOfRangeError):
            measure_qubit(fresh(1, 1), 0, 3)


# ═══════════════════════════════════════════════════════════════════
# Control device
# ═══════════════════════════════════════════════════════════════════


class TestClassicalEvaluation:
    """64-bit register arithmetic with C semantics."""

    def test_increment(self):
        assert eval_classical(CBinary("+", RegisterRef(0), IntConst(1)), [0]) == 1

    def test_negation(self):
        assert eval_classical(CUnary("!", RegisterRef(0)), [1]) == 0
        assert eval_classical(CUnary("!", RegisterRef(0)), [0]) == 1

    def test_constant_true(self):
        assert eval_classical(IntConst(1), []) == 1

    def test_comparisons_yield_zero_or_one(self):
        assert eval_classical(CBinary("<", IntConst(2), IntConst(3)), []) == 1
        assert eval_classical(CBinary("==", RegisterRef(0), IntConst(3)), [2]) == 0

    def test_truncating_division(self):
        assert eval_classical(CBinary("/", IntConst(-7), IntConst(2)), []) == -3
        assert eval_classical(CBinary("%", IntConst(-7), IntConst(2)), []) == -1

    def test_wrapping(self):
        top = (1 << 63) - 1
        overflow = CBinary("+", IntConst(top), IntConst(1))
        assert eval_classical(overflow, []) == -(1 << 63)
        assert wrap64(1 << 64) == 0

    def test_short_circuit(self):
        # right side would divide by zero
        guarded = CBinary("&&", IntConst(0), CBinary("/", IntConst(1), IntConst(0)))
        assert eval_classical(guarded, []) == 0

    def test_division_by_zero(self):
        with pytest.raises(RuntimeDivisionByZeroError) as exc_info:
            eval_classical(CBinary("%", RegisterRef(0), IntConst(0)), [5])
        assert exc_info.value.code == "E304"

    def test_register_out_of_range(self):
        with pytest.raises(IndexOutOfRangeError):
            eval_classical(RegisterRef(2), [0])


# ═══════════════════════════════════════════════════════════════════
# Quantum control flow
# ═══════════════════════════════════════════════════════════════════


QIF_SOURCE = """\
@qcode:
prepared(qubit q, cbit c)
{
    %s
    Measure(q, c);
    qif (c) {
        H(q);
    } qelse {
        NOT(q);
    }
}
"""


class TestQuantumControlFlow:
    """qif picks a branch from register values at run time."""

    @pytest.fixture
    def run_prepared(self, check_text):
        def _run(preparation: str) -> SimState:
            program = check_text(QIF_SOURCE % preparation).require_ok()
            ir = elaborate_entry(program, "prepared", {"q": 1, "c": 1})
            state = SimState.fresh(1, 1, shot_rng(0, 0))
            run_once(ir, state)
            return state

        return _run

    def test_then_branch_after_x(self, run_prepared):
        state = run_prepared("X(q);")
        assert state.registers == [1]
        np.testing.assert_allclose(state.amplitudes, [SQRT_HALF, -SQRT_HALF], atol=1e-9)

    def test_else_branch_without_preparation(self, run_prepared):
        state = run_prepared("")
        assert state.registers == [0]
        np.testing.assert_allclose(state.amplitudes, [0, 1], atol=1e-9)

    def test_qwhile_iteration_cap(self, check_text):
        source = (
            "@qcode:\nstuck(qubit q, cbit c)\n{\n    X(q);\n    Measure(q, c);\n"
            "    qwhile (c) { X(q); }\n}\n"
        )
        program = check_text(source).require_ok()
        ir = elaborate_entry(program, "stuck", {"q": 1, "c": 1})
        with pytest.raises(QWhileLimitExceededError) as exc_info:
            run_once(ir, SimState.fresh(1, 1, shot_rng(0, 0)), max_qwhile_iters=10)
        assert exc_info.value.code == "E303"
