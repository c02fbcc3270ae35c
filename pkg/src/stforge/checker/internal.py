"""Explicit-state model checker: BFS over all input valuations.

Always available, keeping the test suite hermetic.  Next-state functions and
property predicates are compiled to Python closures; BFS parent pointers give
shortest counterexamples.  Hitting the state cap or the timeout downgrades
undecided properties to Unknown.
"""

from __future__ import annotations

import itertools
import sys
import time
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Callable, Iterator, Optional, Union

from ..smv.model import (SBinary, SCase, SConst, SInput, SmvExpr, SmvModel,
                         SUnary, SVar)
from .verdict import (CheckerConfig, StateValuation, Verdict, VerdictStats,
                      VerdictStatus)

State = tuple  # values of model.state_vars, in declaration order


def _trunc_div(a: int, b: int) -> int:
    q = abs(a) // abs(b)
    return q if (a >= 0) == (b >= 0) else -q


def _trunc_mod(a: int, b: int) -> int:
    return a - _trunc_div(a, b) * b


_EVAL_GLOBALS = {"_idiv": _trunc_div, "_imod": _trunc_mod, "bool": bool,
                 "__builtins__": {}}

_BIN_FMT = {
    "&": "({l} and {r})",
    "|": "({l} or {r})",
    "xor": "({l} != {r})",
    "=": "({l} == {r})",
    "!=": "({l} != {r})",
    "<": "({l} < {r})",
    "<=": "({l} <= {r})",
    ">": "({l} > {r})",
    ">=": "({l} >= {r})",
    "+": "({l} + {r})",
    "-": "({l} - {r})",
    "*": "({l} * {r})",
    "/": "_idiv({l}, {r})",
    "mod": "_imod({l}, {r})",
}


def _expr_source(expr: SmvExpr, state_index: dict[str, int],
                 input_index: dict[str, int]) -> str:
    if isinstance(expr, SConst):
        return repr(expr.value)
    if isinstance(expr, SVar):
        return f"s[{state_index[expr.name]}]"
    if isinstance(expr, SInput):
        return f"i[{input_index[expr.name]}]"
    if isinstance(expr, SUnary):
        inner = _expr_source(expr.operand, state_index, input_index)
        return f"(not {inner})" if expr.op == "!" else f"(-{inner})"
    if isinstance(expr, SBinary):
        return _BIN_FMT[expr.op].format(
            l=_expr_source(expr.left, state_index, input_index),
            r=_expr_source(expr.right, state_index, input_index))
    if isinstance(expr, SCase):
        # Nested conditional expression; the final TRUE branch is the default.
        source = _expr_source(expr.branches[-1][1], state_index, input_index)
        for guard, value in reversed(expr.branches[:-1]):
            g = _expr_source(guard, state_index, input_index)
            v = _expr_source(value, state_index, input_index)
            source = f"({v} if {g} else {source})"
        return source
    raise TypeError(f"unknown SMV expression {type(expr).__name__}")


@dataclass
class CompiledModel:
    model: SmvModel
    state_names: list[str]
    state_index: dict[str, int]
    next_fn: Callable[[State, tuple], State]
    spec_fns: list[Callable[[State], bool]]
    input_tuples: list[tuple]
    initial_states: list[State]

    def valuation(self, state: State) -> StateValuation:
        return dict(zip(self.state_names, state))


@contextmanager
def _deep_recursion() -> Iterator[None]:
    # Case trees from heavily merged bodies nest beyond the default limit.
    previous = sys.getrecursionlimit()
    sys.setrecursionlimit(max(previous, 50_000))
    try:
        yield
    finally:
        sys.setrecursionlimit(previous)


def compile_model(model: SmvModel) -> CompiledModel:
    state_names = [v.name for v in model.state_vars]
    state_index = {n: i for i, n in enumerate(state_names)}
    input_names = [v.name for v in model.input_vars]
    input_index = {n: i for i, n in enumerate(input_names)}

    with _deep_recursion():
        parts = [_expr_source(model.next[name], state_index, input_index)
                 for name in state_names]
        body = "(" + ", ".join(parts) + ("," if len(parts) == 1 else "") + ")"
        next_fn = eval(f"lambda s, i: {body}", dict(_EVAL_GLOBALS))  # noqa: S307

        spec_fns = []
        for _, spec in model.invarspecs:
            source = _expr_source(spec, state_index, input_index)
            spec_fns.append(eval(f"lambda s: bool({source})",
                                 dict(_EVAL_GLOBALS)))

    input_tuples = [tuple(combo) for combo in itertools.product(
        *(v.domain_values() for v in model.input_vars))] or [()]

    free = [v.domain_values() if v.init is None else [v.init]
            for v in model.state_vars]
    initial_states = [tuple(combo) for combo in itertools.product(*free)]

    return CompiledModel(model=model, state_names=state_names,
                         state_index=state_index, next_fn=next_fn,
                         spec_fns=spec_fns, input_tuples=input_tuples,
                         initial_states=initial_states)


@dataclass
class Exploration:
    compiled: CompiledModel
    order: list[State]                       # BFS discovery order
    parents: dict[State, Optional[State]]
    complete: bool
    elapsed_ms: int

    @property
    def states(self) -> set[State]:
        return set(self.parents)

    def path_to(self, state: State) -> list[State]:
        path = [state]
        while True:
            parent = self.parents[path[-1]]
            if parent is None:
                break
            path.append(parent)
        path.reverse()
        return path


def explore(model: Union[SmvModel, CompiledModel],
            config: Optional[CheckerConfig] = None) -> Exploration:
    """Breadth-first reachability over every input valuation per step."""
    config = config or CheckerConfig()
    compiled = model if isinstance(model, CompiledModel) else compile_model(model)
    deadline = time.monotonic() + config.timeout_ms / 1000.0

    parents: dict[State, Optional[State]] = {}
    order: list[State] = []
    for init in compiled.initial_states:
        if init not in parents:
            parents[init] = None
            order.append(init)

    next_fn = compiled.next_fn
    input_tuples = compiled.input_tuples
    complete = True
    cursor = 0
    started = time.monotonic()
    while cursor < len(order):
        if len(parents) > config.state_cap:
            complete = False
            break
        if cursor % 256 == 0 and time.monotonic() > deadline:
            complete = False
            break
        state = order[cursor]
        cursor += 1
        for inputs in input_tuples:
            successor = next_fn(state, inputs)
            if successor not in parents:
                parents[successor] = state
                order.append(successor)
    elapsed_ms = int((time.monotonic() - started) * 1000)
    return Exploration(compiled=compiled, order=order, parents=parents,
                       complete=complete, elapsed_ms=elapsed_ms)


def check_internal(model: SmvModel,
                   config: Optional[CheckerConfig] = None) -> list[Verdict]:
    """Check every INVARSPEC; Violated verdicts carry a shortest
    counterexample (BFS order)."""
    config = config or CheckerConfig()
    compiled = compile_model(model)
    if not compiled.spec_fns:
        return []
    exploration = explore(compiled, config)

    verdicts: list[Verdict] = []
    explored = len(exploration.parents)
    for index, (prop_id, _) in enumerate(model.invarspecs):
        spec_fn = compiled.spec_fns[index]
        violating = next((s for s in exploration.order if not spec_fn(s)), None)
        if violating is not None:
            trace = [compiled.valuation(s)
                     for s in exploration.path_to(violating)]
            status, counterexample = VerdictStatus.VIOLATED, trace
        elif exploration.complete:
            status, counterexample = VerdictStatus.PROVED, None
        else:
            status, counterexample = VerdictStatus.UNKNOWN, None
        verdicts.append(Verdict(
            property_id=prop_id, status=status, counterexample=counterexample,
            stats=VerdictStats(states_explored=explored,
                               elapsed_ms=exploration.elapsed_ms)))
    return verdicts
