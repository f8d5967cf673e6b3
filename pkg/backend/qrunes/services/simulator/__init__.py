"""
Statevector simulator with an integer-register control device.
"""

from qrunes.services.simulator.classical import eval_classical, wrap64
from qrunes.services.simulator.runner import (
    ShotOutcome,
    bitstring_of,
    run_once,
    run_shots,
    shot_rng,
)
from qrunes.services.simulator.state import (
    SimState,
    apply_gate,
    measure_qubit,
    outcome_probabilities,
)

__all__ = [
    "SimState",
    "apply_gate",
    "measure_qubit",
    "outcome_probabilities",
    "eval_classical",
    "wrap64",
    "ShotOutcome",
    "bitstring_of",
    "run_once",
    "run_shots",
    "shot_rng",
]
