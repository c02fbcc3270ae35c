"""Replay a checker counterexample through the interpreter.

Closes the interpreter/checker loop: the inputs recorded in a trace's latch
variables are fed back through ``run_cycle`` and every step's program-visible
values must match the trace exactly.
"""

from __future__ import annotations

from ..frontend.analyzer import CheckedProgram
from ..interp import ScanState, initial_state, run_cycle
from ..smv.model import SmvModel
from ..smv.verifiable import apply_default_ranges
from .verdict import StateValuation


class ReplayMismatch(Exception):
    def __init__(self, step: int, detail: str) -> None:
        super().__init__(f"replay diverged at step {step}: {detail}")
        self.step = step


def replay_counterexample(program: CheckedProgram, model: SmvModel,
                          trace: list[StateValuation]) -> list[ScanState]:
    """Run the trace's inputs through the interpreter; returns the interpreter
    states (one per trace step, initial state first).

    Raises ReplayMismatch when any step's program variables, latched inputs
    or fault flag disagree with the trace.
    """
    program = apply_default_ranges(program)
    state = initial_state(program)
    states = [state]
    _compare(program, model, trace[0], state, step=0)
    for step, model_state in enumerate(trace[1:], start=1):
        inputs = {name: model_state[latch]
                  for name, latch in model.latch_names.items()}
        state = run_cycle(program, state, inputs)
        states.append(state)
        _compare(program, model, model_state, state, step)
    return states


def _compare(program: CheckedProgram, model: SmvModel,
             expected: StateValuation, actual: ScanState, step: int) -> None:
    for name in model.program_vars:
        if expected[name] != actual.values[name]:
            raise ReplayMismatch(step, f"{name}: trace has {expected[name]!r}, "
                                       f"interpreter has {actual.values[name]!r}")
    for input_name, latch in model.latch_names.items():
        if expected[latch] != actual.values[input_name]:
            raise ReplayMismatch(step, f"{input_name}: trace latched "
                                       f"{expected[latch]!r}, interpreter has "
                                       f"{actual.values[input_name]!r}")
    if model.fault_var is not None:
        expected_fault = bool(expected[model.fault_var])
        if expected_fault != (actual.fault is not None):
            raise ReplayMismatch(step, f"fault flag: trace has "
                                       f"{expected_fault}, interpreter has "
                                       f"{actual.fault is not None}")
