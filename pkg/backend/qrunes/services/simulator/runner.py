"""
Shot execution.

``run_once`` walks the IR on a fresh state; ``run_shots`` repeats it with
one independent random stream per shot, derived from (seed, shot index)
with numpy's PCG64, so results are bit-identical whether shots run
sequentially or on a thread pool.
"""

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from qrunes.core import logger, settings
from qrunes.core.exceptions import (
    QubitLimitError,
    QWhileLimitExceededError,
    RuntimeDivisionByZeroError,
)
from qrunes.schemas.results import RegisterStats, ShotFailure, SimulationReport
from qrunes.schemas.run_config import RunConfig
from qrunes.services.qir.nodes import (
    ClassicalOp,
    Gate,
    MeasureNode,
    QIfNode,
    QProgIR,
    QWhileNode,
)
from qrunes.services.simulator.classical import eval_classical
from qrunes.services.simulator.state import SimState, apply_gate, measure_qubit

_SEED_MASK = (1 << 64) - 1


@dataclass
class ShotOutcome:
    """Final classical state of one shot."""

    bitstring: str
    registers: list[int]
    error: RuntimeDivisionByZeroError | None = None


def shot_rng(seed: int, shot: int) -> np.random.Generator:
    """Independent PCG64 stream for shot number ``shot``."""
    sequence = np.random.SeedSequence(seed & _SEED_MASK, spawn_key=(shot,))
    return np.random.Generator(np.random.PCG64(sequence))


def bitstring_of(registers: list[int]) -> str:
    """0/1 projection of each register, last register first."""
    return "".join("1" if value != 0 else "0" for value in reversed(registers))


def _execute(ir: QProgIR, state: SimState, max_qwhile_iters: int) -> None:
    for node in ir.nodes:
        if isinstance(node, Gate):
            apply_gate(state, node)
        elif isinstance(node, MeasureNode):
            measure_qubit(state, node.qubit, node.register)
        elif isinstance(node, ClassicalOp):
            state.check_register(node.register)
            state.registers[node.register] = eval_classical(node.rhs, state.registers)
        elif isinstance(node, QIfNode):
            if eval_classical(node.cond, state.registers) != 0:
                _execute(node.then, state, max_qwhile_iters)
            else:
                _execute(node.qelse, state, max_qwhile_iters)
        elif isinstance(node, QWhileNode):
            iterations = 0
            while eval_classical(node.cond, state.registers) != 0:
                iterations += 1
                if iterations > max_qwhile_iters:
                    raise QWhileLimitExceededError(node.span, max_qwhile_iters)
                _execute(node.body, state, max_qwhile_iters)


def run_once(
    ir: QProgIR, state: SimState, max_qwhile_iters: int | None = None
) -> ShotOutcome:
    """
    Execute one shot.

    Args:
        ir: Program to run
        state: Fresh |0...0> state with zeroed registers
        max_qwhile_iters: Per-loop iteration cap (default from settings)

    Returns:
        The shot's bitstring and final register values

    Raises:
        QWhileLimitExceededError: A qwhile loop ran past the cap
        SimulationError: Index, duplicate-target or division errors
    """
    cap = max_qwhile_iters or settings.max_qwhile_iters
    _execute(ir, state, cap)
    return ShotOutcome(bitstring_of(state.registers), list(state.registers))


def run_shots(
    ir: QProgIR, config: RunConfig, workers: int | None = None
) -> SimulationReport:
    """
    Run ``config.shots`` independent shots and aggregate the results.

    Args:
        ir: Program with a machine layout (or inferable sizes)
        config: Shots, seed and qwhile cap
        workers: Thread count; results do not depend on it

    Returns:
        SimulationReport with histogram and per-register statistics
        over the completed shots; shots aborted by a run-time division by
        zero are counted in ``failures`` instead

    Raises:
        QubitLimitError: More qubits than settings.max_qubits
    """
    shots, seed = config.shots, config.seed
    n_qubits = ir.qubit_count()
    n_registers = ir.register_count()
    if n_qubits > settings.max_qubits:
        raise QubitLimitError(n_qubits, settings.max_qubits)
    names = (
        list(ir.layout.register_names)
        if ir.layout is not None
        else [f"r{i}" for i in range(n_registers)]
    )

    def one(k: int) -> ShotOutcome:
        state = SimState.fresh(n_qubits, n_registers, shot_rng(seed, k))
        try:
            return run_once(ir, state, config.max_qwhile_iters)
        except RuntimeDivisionByZeroError as e:
            return ShotOutcome("", [], error=e)

    workers = workers or settings.sim_workers
    logger.debug(f"Running {shots} shot(s) on {n_qubits} qubit(s), {workers} worker(s)")
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(one, range(shots)))
    else:
        outcomes = [one(k) for k in range(shots)]

    completed = [o for o in outcomes if o.error is None]
    counts = Counter(o.bitstring for o in completed)
    registers: dict[str, RegisterStats] = {}
    if completed:
        for i, name in enumerate(names):
            values = [o.registers[i] for o in completed]
            registers[name] = RegisterStats(
                mean=sum(values) / len(values), min=min(values), max=max(values)
            )
    failures = _collect_failures(outcomes)
    for failure in failures:
        logger.warning(
            f"{failure.code} aborted {failure.shots} shot(s), "
            f"first at shot {failure.first_shot}: {failure.message}"
        )
    return SimulationReport(
        histogram=dict(sorted(counts.items())),
        registers=registers,
        shots=shots,
        seed=seed,
        failures=failures,
    )


def _collect_failures(outcomes: list[ShotOutcome]) -> list[ShotFailure]:
    grouped: dict[tuple[str, str], ShotFailure] = {}
    for k, outcome in enumerate(outcomes):
        if outcome.error is None:
            continue
        key = (outcome.error.code, outcome.error.message)
        if key in grouped:
            grouped[key].shots += 1
        else:
            grouped[key] = ShotFailure(
                code=key[0], message=key[1], shots=1, first_shot=k
            )
    return list(grouped.values())
