"""Deterministic scan-cycle interpreter for checked programs.

One ``run_cycle`` call is one PLC scan: inputs are latched, the body runs
top to bottom, outputs and locals persist into the next cycle.  Integer
arithmetic wraps two's-complement at the operand width (recorded as a
warning); division by zero, a blown loop-step budget, or an assignment
outside a variable's declared range abort the cycle, leaving every value
untouched and setting a fault flag.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .frontend import ast
from .frontend.analyzer import CheckedProgram
from .frontend.diagnostics import SourceSpan

Value = Union[bool, int, float]

DEFAULT_STEP_BUDGET = 10_000


@dataclass(frozen=True)
class Fault:
    kind: str  # "div_zero" | "step_budget" | "range"
    span: SourceSpan
    message: str


@dataclass
class ScanState:
    values: dict[str, Value]
    cycle: int = 0
    fault: Fault | None = None
    # Assertion failures and overflow warnings observed in the last cycle.
    assertion_failures: tuple[SourceSpan, ...] = ()
    warnings: tuple[SourceSpan, ...] = ()


@dataclass
class TraceCycle:
    inputs: dict[str, Value]
    post_values: dict[str, Value]
    fault: Fault | None


@dataclass
class Trace:
    cycles: list[TraceCycle] = field(default_factory=list)
    assertion_failures: list[tuple[int, SourceSpan]] = field(default_factory=list)
    warnings: list[tuple[int, SourceSpan]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "cycles": [
                {
                    "inputs": c.inputs,
                    "post_values": c.post_values,
                    "fault": None if c.fault is None else {
                        "kind": c.fault.kind, "message": c.fault.message,
                        "line": c.fault.span.line, "column": c.fault.span.column,
                    },
                }
                for c in self.cycles
            ],
            "assertion_failures": [
                {"cycle": cycle, "line": span.line, "column": span.column}
                for cycle, span in self.assertion_failures
            ],
        }


class _CycleFault(Exception):
    def __init__(self, fault: Fault) -> None:
        self.fault = fault


def default_value(decl: ast.VarDecl) -> Value:
    """Initial value: the declared init, else FALSE / range lower bound / zero."""
    if decl.init is not None:
        value = decl.init.value
        if decl.ty is ast.ElemType.REAL:
            return float(value)
        return value
    if decl.ty is ast.ElemType.BOOL:
        return False
    if decl.ty is ast.ElemType.REAL:
        return 0.0
    if decl.range is not None:
        return decl.range[0]
    return 0


def initial_state(program: CheckedProgram) -> ScanState:
    values = {d.name: default_value(d) for d in program.program.all_decls()}
    if program.implicit_result is not None:
        values[program.implicit_result.name] = default_value(program.implicit_result)
    return ScanState(values=values)


class _Executor:
    def __init__(self, program: CheckedProgram, values: dict[str, Value],
                 step_budget: int) -> None:
        self.program = program
        self.values = values
        self.steps_left = step_budget
        self.assertion_failures: list[SourceSpan] = []
        self.warnings: list[SourceSpan] = []

    def charge(self, span: SourceSpan) -> None:
        self.steps_left -= 1
        if self.steps_left < 0:
            raise _CycleFault(Fault("step_budget", span, "loop step budget exceeded"))

    def wrap(self, value: int, ty: ast.ElemType, span: SourceSpan) -> int:
        lo, hi = ast.INT_WIDTH_BOUNDS[ty]
        if lo <= value <= hi:
            return value
        width = hi - lo + 1
        self.warnings.append(span)
        return (value - lo) % width + lo

    # -- expressions ---------------------------------------------------

    def eval(self, expr: ast.Expression) -> Value:
        if isinstance(expr, ast.Const):
            if isinstance(expr.value, bool) or expr.is_time:
                return expr.value
            return expr.value
        if isinstance(expr, ast.VarRef):
            return self.values[self.program.decl(expr.name).name]
        if isinstance(expr, ast.Unary):
            operand = self.eval(expr.operand)
            if expr.op is ast.UnaryOp.NOT:
                return not operand
            if isinstance(operand, float):
                return -operand
            assert expr.ty is not None
            return self.wrap(-operand, expr.ty, expr.span)
        if isinstance(expr, ast.Binary):
            return self.eval_binary(expr)
        raise TypeError(f"unknown expression node {type(expr).__name__}")

    def eval_binary(self, expr: ast.Binary) -> Value:
        op = expr.op
        if op is ast.BinaryOp.AND:
            return bool(self.eval(expr.left)) and bool(self.eval(expr.right))
        if op is ast.BinaryOp.OR:
            return bool(self.eval(expr.left)) or bool(self.eval(expr.right))
        left = self.eval(expr.left)
        right = self.eval(expr.right)
        if op is ast.BinaryOp.XOR:
            return bool(left) != bool(right)
        if op is ast.BinaryOp.EQ:
            return left == right
        if op is ast.BinaryOp.NE:
            return left != right
        if op is ast.BinaryOp.LT:
            return left < right
        if op is ast.BinaryOp.LE:
            return left <= right
        if op is ast.BinaryOp.GT:
            return left > right
        if op is ast.BinaryOp.GE:
            return left >= right
        # Arithmetic: expr.ty is the (possibly widened) result type.
        assert expr.ty is not None
        if op is ast.BinaryOp.ADD:
            result = left + right
        elif op is ast.BinaryOp.SUB:
            result = left - right
        elif op is ast.BinaryOp.MUL:
            result = left * right
        elif op is ast.BinaryOp.DIV:
            if right == 0 or right == 0.0:
                raise _CycleFault(Fault("div_zero", expr.span, "division by zero"))
            if expr.ty is ast.ElemType.REAL:
                result = left / right
            else:
                result = _trunc_div(left, right)
        elif op is ast.BinaryOp.MOD:
            if right == 0:
                raise _CycleFault(Fault("div_zero", expr.span, "MOD by zero"))
            result = left - _trunc_div(left, right) * right
        else:
            raise TypeError(f"unknown binary operator {op}")
        if expr.ty.is_integer:
            return self.wrap(result, expr.ty, expr.span)
        return result

    # -- statements ------------------------------------------------------

    def assign(self, name: str, value: Value, span: SourceSpan) -> None:
        decl = self.program.decl(name)
        if decl.ty is ast.ElemType.REAL:
            value = float(value)
        if decl.range is not None and not (decl.range[0] <= value <= decl.range[1]):
            raise _CycleFault(Fault(
                "range", span,
                f"value {value} escapes range {decl.range[0]}..{decl.range[1]} "
                f"of '{decl.name}'"))
        self.values[decl.name] = value

    def execute(self, stmt: ast.Statement) -> None:
        self.charge(stmt.span)
        if isinstance(stmt, ast.Assign):
            self.assign(stmt.target, self.eval(stmt.expr), stmt.span)
        elif isinstance(stmt, ast.If):
            if self.eval(stmt.cond):
                self.execute_all(stmt.then_body)
                return
            for cond, body in stmt.elifs:
                if self.eval(cond):
                    self.execute_all(body)
                    return
            self.execute_all(stmt.else_body)
        elif isinstance(stmt, ast.Case):
            selector = self.eval(stmt.selector)
            for arm in stmt.arms:
                if _arm_matches(arm, selector):
                    self.execute_all(arm.body)
                    return
            self.execute_all(stmt.else_body)
        elif isinstance(stmt, ast.For):
            self.execute_for(stmt)
        elif isinstance(stmt, ast.While):
            while self.eval(stmt.cond):
                self.charge(stmt.span)
                self.execute_all(stmt.body)
        elif isinstance(stmt, ast.Repeat):
            while True:
                self.charge(stmt.span)
                self.execute_all(stmt.body)
                if self.eval(stmt.until):
                    return
        elif isinstance(stmt, ast.Assert):
            if not self.eval(stmt.expr):
                self.assertion_failures.append(stmt.span)
        elif isinstance(stmt, ast.Empty):
            pass
        else:
            raise TypeError(f"unknown statement node {type(stmt).__name__}")

    def execute_all(self, stmts: list[ast.Statement]) -> None:
        for stmt in stmts:
            self.execute(stmt)

    def execute_for(self, stmt: ast.For) -> None:
        decl = self.program.decl(stmt.var)
        start = self.eval(stmt.start)
        stop = self.eval(stmt.stop)
        step = self.eval(stmt.step) if stmt.step is not None else 1
        self.assign(stmt.var, start, stmt.span)
        while True:
            current = self.values[decl.name]
            if step >= 0:
                if current > stop:
                    return
            elif current < stop:
                return
            self.charge(stmt.span)
            self.execute_all(stmt.body)
            bumped = self.wrap(self.values[decl.name] + step, decl.ty, stmt.span)
            self.assign(stmt.var, bumped, stmt.span)


def _arm_matches(arm: ast.CaseArm, selector: Value) -> bool:
    for label in arm.labels:
        if isinstance(label, tuple):
            if label[0] <= selector <= label[1]:
                return True
        elif selector == label:
            return True
    return False


def _trunc_div(a: int, b: int) -> int:
    q = abs(a) // abs(b)
    return q if (a >= 0) == (b >= 0) else -q


def run_cycle(program: CheckedProgram, state: ScanState, inputs: dict[str, Value],
              step_budget: int = DEFAULT_STEP_BUDGET) -> ScanState:
    """Execute one scan cycle; returns the post-cycle state.

    ``inputs`` must assign every VAR_INPUT variable (any casing).  On a
    runtime fault the returned state keeps the previous values and carries
    the fault.
    """
    canonical: dict[str, Value] = {}
    for name, value in inputs.items():
        key = name.lower()
        if (key not in program.symbols
                or program.sections[key] is not ast.Section.INPUT):
            raise ValueError(f"'{name}' is not an input variable")
        canonical[program.symbols[key].name] = value
    for decl in program.input_decls():
        if decl.name not in canonical:
            raise ValueError(f"missing input '{decl.name}'")
        _validate_input(decl, canonical[decl.name])

    working = dict(state.values)
    working.update(canonical)
    ex = _Executor(program, working, step_budget)
    try:
        ex.execute_all(program.program.body)
    except _CycleFault as fault:
        # The aborted cycle has no effect on outputs and locals, and partial
        # assertion results are dropped; the sampled inputs still latch so a
        # trace records what drove the faulting cycle.
        reverted = dict(state.values)
        reverted.update(canonical)
        return ScanState(values=reverted, cycle=state.cycle + 1,
                         fault=fault.fault,
                         assertion_failures=(),
                         warnings=tuple(ex.warnings))
    return ScanState(values=working, cycle=state.cycle + 1, fault=None,
                     assertion_failures=tuple(ex.assertion_failures),
                     warnings=tuple(ex.warnings))


def _validate_input(decl: ast.VarDecl, value: Value) -> None:
    if decl.ty is ast.ElemType.BOOL:
        if not isinstance(value, bool):
            raise ValueError(f"input '{decl.name}' must be bool, got {value!r}")
        return
    if decl.ty is ast.ElemType.REAL:
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise ValueError(f"input '{decl.name}' must be numeric, got {value!r}")
        return
    if not isinstance(value, int) or isinstance(value, bool):
        raise ValueError(f"input '{decl.name}' must be an integer, got {value!r}")
    lo, hi = ast.INT_WIDTH_BOUNDS.get(decl.ty, (None, None))
    if lo is not None and not (lo <= value <= hi):
        raise ValueError(f"input '{decl.name}' value {value} outside {decl.ty.value}")
    if decl.range is not None and not (decl.range[0] <= value <= decl.range[1]):
        raise ValueError(f"input '{decl.name}' value {value} outside declared "
                         f"range {decl.range[0]}..{decl.range[1]}")


def run_trace(program: CheckedProgram, input_sequence: list[dict[str, Value]],
              step_budget: int = DEFAULT_STEP_BUDGET) -> Trace:
    """Fold ``run_cycle`` over an input sequence, starting from defaults."""
    trace = Trace()
    state = initial_state(program)
    for inputs in input_sequence:
        state = run_cycle(program, state, inputs, step_budget)
        trace.cycles.append(TraceCycle(inputs=dict(inputs),
                                       post_values=dict(state.values),
                                       fault=state.fault))
        for span in state.assertion_failures:
            trace.assertion_failures.append((state.cycle - 1, span))
        for span in state.warnings:
            trace.warnings.append((state.cycle - 1, span))
    return trace
