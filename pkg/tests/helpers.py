"""Shared test machinery: random program generators, the brute-force
reachability oracle, and seeded-bug mutation of corpus references."""

from __future__ import annotations

import itertools
import random

from stforge.checker import VerdictStatus, check_internal, explore
from stforge.frontend import analyze, ast, compile_check, parse, tokenize
from stforge.frontend.analyzer import CheckedProgram
from stforge.frontend.diagnostics import SourceSpan
from stforge.interp import initial_state, run_cycle
from stforge.smv import apply_default_ranges, check_verifiable, translate
from stforge.smv.model import SmvModel
from stforge.frontend.diagnostics import has_errors

SPAN = SourceSpan("<gen>", 1, 1, 0)

LED_SOURCE = """\
FUNCTION_BLOCK LED_Control
VAR_INPUT
    PB1 : BOOL;
    PB2 : BOOL;
END_VAR
VAR_OUTPUT
    LED : BOOL;
END_VAR
LED := PB1 AND NOT PB2;
END_FUNCTION_BLOCK
"""

MOTOR_SOURCE = """\
FUNCTION_BLOCK Motor_Threshold
VAR_INPUT
    LowPressure : DINT (36456..36472);
END_VAR
VAR_OUTPUT
    Motor_Critical : BOOL;
END_VAR
IF LowPressure >= 36464 THEN
    Motor_Critical := TRUE;
ELSE
    Motor_Critical := FALSE;
END_IF;
END_FUNCTION_BLOCK
"""


def checked(source: str) -> CheckedProgram:
    report = compile_check(source)
    assert report.ok, [d.render() for d in report.diagnostics]
    assert report.program is not None
    return report.program


def parse_source(source: str) -> ast.Program:
    tokens, lex_diags = tokenize(source)
    assert not lex_diags, lex_diags
    program, diags = parse(tokens)
    assert program is not None, [d.render() for d in diags]
    return program


# -- random syntactic programs (round-trip fuzzing) ---------------------------

_NAME_POOL = ["alpha", "beta", "Gamma", "delta_1", "xVal", "Count2", "flagA",
              "sensor", "relay", "totals"]


class SyntaxGen:
    """Random parser-shaped ASTs: anything this emits must survive
    pretty-print -> reparse structurally intact."""

    def __init__(self, rng: random.Random) -> None:
        self.rng = rng
        self.names = self.rng.sample(_NAME_POOL, 6)

    def name(self) -> str:
        return self.rng.choice(self.names)

    def const(self) -> ast.Const:
        roll = self.rng.random()
        if roll < 0.35:
            return ast.Const(span=SPAN, value=self.rng.choice([True, False]))
        if roll < 0.75:
            return ast.Const(span=SPAN, value=self.rng.randrange(0, 1000))
        if roll < 0.9:
            return ast.Const(span=SPAN, value=self.rng.randrange(0, 64) / 4.0)
        return ast.Const(span=SPAN, value=self.rng.randrange(0, 5000), is_time=True)

    def expr(self, depth: int = 0) -> ast.Expression:
        if depth >= 3 or self.rng.random() < 0.35:
            if self.rng.random() < 0.5:
                return ast.VarRef(span=SPAN, name=self.name())
            return self.const()
        roll = self.rng.random()
        if roll < 0.2:
            op = self.rng.choice([ast.UnaryOp.NOT, ast.UnaryOp.NEG])
            return ast.Unary(span=SPAN, op=op, operand=self.expr(depth + 1))
        op = self.rng.choice(list(ast.BinaryOp))
        return ast.Binary(span=SPAN, op=op, left=self.expr(depth + 1),
                          right=self.expr(depth + 1))

    def statement(self, depth: int = 0) -> ast.Statement:
        choices = ["assign", "assign", "assert", "empty"]
        if depth < 2:
            choices += ["if", "case", "for", "while", "repeat"]
        kind = self.rng.choice(choices)
        if kind == "assign":
            return ast.Assign(span=SPAN, target=self.name(), expr=self.expr())
        if kind == "assert":
            return ast.Assert(span=SPAN, expr=self.expr())
        if kind == "empty":
            return ast.Empty(span=SPAN)
        if kind == "if":
            elifs = [(self.expr(), self.block(depth + 1))
                     for _ in range(self.rng.randrange(0, 3))]
            return ast.If(span=SPAN, cond=self.expr(),
                          then_body=self.block(depth + 1), elifs=elifs,
                          else_body=self.block(depth + 1)
                          if self.rng.random() < 0.5 else [])
        if kind == "case":
            arms = []
            for _ in range(self.rng.randrange(1, 4)):
                labels = []
                for _ in range(self.rng.randrange(1, 3)):
                    if self.rng.random() < 0.3:
                        lo = self.rng.randrange(-5, 10)
                        labels.append((lo, lo + self.rng.randrange(1, 4)))
                    else:
                        labels.append(self.rng.randrange(-5, 10))
                arms.append(ast.CaseArm(labels=labels, body=self.block(depth + 1)))
            return ast.Case(span=SPAN, selector=self.expr(), arms=arms,
                            else_body=self.block(depth + 1)
                            if self.rng.random() < 0.5 else [])
        if kind == "for":
            return ast.For(span=SPAN, var=self.name(), start=self.expr(2),
                           stop=self.expr(2),
                           step=self.expr(2) if self.rng.random() < 0.4 else None,
                           body=self.block(depth + 1))
        if kind == "while":
            return ast.While(span=SPAN, cond=self.expr(),
                             body=self.block(depth + 1))
        return ast.Repeat(span=SPAN, body=self.block(depth + 1),
                          until=self.expr())

    def block(self, depth: int) -> list[ast.Statement]:
        return [self.statement(depth) for _ in range(self.rng.randrange(0, 4))]

    def decls(self, count: int) -> list[ast.VarDecl]:
        decls = []
        for name in self.rng.sample(self.names, count):
            ty = self.rng.choice(list(ast.ElemType))
            rng_ann = None
            init = None
            if ty.is_integer and self.rng.random() < 0.5:
                lo = self.rng.randrange(-10, 10)
                rng_ann = (lo, lo + self.rng.randrange(1, 20))
            if self.rng.random() < 0.4:
                if ty is ast.ElemType.BOOL:
                    init = ast.Const(span=SPAN, value=self.rng.choice([True, False]))
                elif ty is ast.ElemType.REAL:
                    init = ast.Const(span=SPAN, value=self.rng.randrange(0, 40) / 4.0)
                elif ty is ast.ElemType.TIME:
                    init = ast.Const(span=SPAN, value=self.rng.randrange(0, 2000),
                                     is_time=True)
                elif rng_ann is not None:
                    init = ast.Const(span=SPAN, value=self.rng.randrange(
                        rng_ann[0], rng_ann[1] + 1))
                else:
                    init = ast.Const(span=SPAN, value=self.rng.randrange(-50, 200))
            decls.append(ast.VarDecl(name=name, ty=ty, span=SPAN, init=init,
                                     range=rng_ann))
        return decls

    def program(self) -> ast.Program:
        kind = self.rng.choice(list(ast.PouKind))
        names = iter(self.rng.sample(self.names, len(self.names)))
        sections = [[], [], []]
        for i in range(3):
            for _ in range(self.rng.randrange(0, 3)):
                sections[i].extend(self.decls(1))
        # Re-sample to keep declaration names unique across sections.
        seen: set[str] = set()
        for section in sections:
            section[:] = [d for d in section
                          if d.name.lower() not in seen
                          and not seen.add(d.name.lower())]
        return ast.Program(
            kind=kind, name="Unit_" + str(self.rng.randrange(1000)),
            inputs=sections[0], outputs=sections[1], locals=sections[2],
            body=[self.statement() for _ in range(self.rng.randrange(0, 6))],
            span=SPAN,
            return_type=(self.rng.choice(list(ast.ElemType))
                         if kind is ast.PouKind.FUNCTION else None))


def random_program(rng: random.Random) -> ast.Program:
    return SyntaxGen(rng).program()


# -- random checked programs (translation-soundness fuzzing) -------------------


class CheckedGen:
    """Random type-correct, verifiable programs over small finite domains."""

    def __init__(self, rng: random.Random) -> None:
        self.rng = rng

    def bool_expr(self, bools: list[str], ints: list[tuple[str, int, int]],
                  depth: int = 0) -> str:
        if depth >= 2 or self.rng.random() < 0.3:
            if bools and self.rng.random() < 0.7:
                return self.rng.choice(bools)
            if ints and self.rng.random() < 0.7:
                name, lo, hi = self.rng.choice(ints)
                op = self.rng.choice(["=", "<>", "<", "<=", ">", ">="])
                return f"({name} {op} {self.rng.randrange(lo, hi + 1)})"
            return self.rng.choice(["TRUE", "FALSE"])
        roll = self.rng.random()
        a = self.bool_expr(bools, ints, depth + 1)
        if roll < 0.25:
            return f"(NOT {a})"
        b = self.bool_expr(bools, ints, depth + 1)
        op = self.rng.choice(["AND", "OR", "XOR"])
        return f"({a} {op} {b})"

    def int_expr(self, ints: list[tuple[str, int, int]], depth: int = 0) -> str:
        if depth >= 2 or self.rng.random() < 0.4 or not ints:
            if ints and self.rng.random() < 0.6:
                return self.rng.choice(ints)[0]
            return str(self.rng.randrange(0, 4))
        a = self.int_expr(ints, depth + 1)
        op = self.rng.choice(["+", "-", "*"])
        return f"({a} {op} {self.rng.randrange(0, 3)})"

    def source(self) -> str:
        n_bool_in = self.rng.randrange(1, 3)
        n_bool_out = self.rng.randrange(1, 3)
        n_int = self.rng.randrange(0, 3)
        inputs = [f"bi{i}" for i in range(n_bool_in)]
        outputs = [f"bo{i}" for i in range(n_bool_out)]
        ints: list[tuple[str, int, int]] = []
        decls_in = [f"    {n} : BOOL;" for n in inputs]
        decls_out = [f"    {n} : BOOL;" for n in outputs]
        decls_local = []
        for i in range(n_int):
            hi = self.rng.choice([3, 7])
            name = f"iv{i}"
            ints.append((name, 0, hi))
            line = f"    {name} : INT (0..{hi});"
            if i == 0 and self.rng.random() < 0.5:
                decls_in.append(line)
            else:
                decls_local.append(line)
        local_ints = [t for t in ints if not any(
            f"    {t[0]} : " in line for line in decls_in)]
        writable_ints = local_ints

        body: list[str] = []
        for _ in range(self.rng.randrange(1, 5)):
            body.append(self.statement(inputs, outputs, ints, writable_ints))
        return "\n".join([
            "PROGRAM fuzz",
            "VAR_INPUT", *decls_in, "END_VAR",
            "VAR_OUTPUT", *decls_out, "END_VAR",
            *( ["VAR", *decls_local, "END_VAR"] if decls_local else [] ),
            *body,
            "END_PROGRAM",
        ])

    def statement(self, inputs, outputs, ints, writable_ints, depth: int = 0) -> str:
        bools = inputs + outputs
        choices = ["bool_assign", "bool_assign", "assert"]
        if writable_ints:
            choices += ["int_assign", "int_assign"]
        if depth == 0:
            choices += ["if", "if"]
            if writable_ints:
                choices.append("for")
        kind = self.rng.choice(choices)
        if kind == "bool_assign":
            target = self.rng.choice(outputs)
            return f"{target} := {self.bool_expr(bools, ints)};"
        if kind == "int_assign":
            name, lo, hi = self.rng.choice(writable_ints)
            return f"{name} := {self.int_expr(ints)};"
        if kind == "assert":
            return f"ASSERT({self.bool_expr(bools, ints)});"
        if kind == "for":
            name, lo, hi = self.rng.choice(writable_ints)
            stop = min(hi - 1, self.rng.randrange(1, 4))
            inner = self.statement(inputs, outputs, ints, [], depth + 1)
            return (f"FOR {name} := 0 TO {stop} DO\n    {inner}\nEND_FOR;")
        cond = self.bool_expr(bools, ints)
        then = self.statement(inputs, outputs, ints, writable_ints, depth + 1)
        if self.rng.random() < 0.5:
            other = self.statement(inputs, outputs, ints, writable_ints, depth + 1)
            return f"IF {cond} THEN\n    {then}\nELSE\n    {other}\nEND_IF;"
        return f"IF {cond} THEN\n    {then}\nEND_IF;"


def random_checked_source(rng: random.Random) -> str:
    """Source of a compiling, verifiable random program (retries until one
    passes the frontend and the verifiability gate)."""
    gen = CheckedGen(rng)
    while True:
        source = gen.source()
        report = compile_check(source)
        if not report.ok:
            continue
        if has_errors(check_verifiable(report.program)):
            continue
        return source


# -- brute-force reachability oracle -------------------------------------------


def input_combos(program: CheckedProgram) -> list[dict]:
    def domain(decl: ast.VarDecl):
        if decl.ty is ast.ElemType.BOOL:
            return [False, True]
        assert decl.range is not None
        return list(range(decl.range[0], decl.range[1] + 1))

    decls = program.input_decls()
    if not decls:
        return [{}]
    return [dict(zip([d.name for d in decls], values))
            for values in itertools.product(*(domain(d) for d in decls))]


def interp_reachable(program: CheckedProgram) -> set[tuple]:
    """All states reachable by run_cycle from the initial state, over every
    input valuation per step; states project to (state vars, latched inputs,
    fault)."""
    program = apply_default_ranges(program)
    combos = input_combos(program)
    state_names = [d.name for d in program.state_decls()]
    input_names = [d.name for d in program.input_decls()]

    def key(state):
        return (tuple(state.values[n] for n in state_names)
                + tuple(state.values[n] for n in input_names)
                + (state.fault is not None,))

    init = initial_state(program)
    seen = {key(init)}
    frontier = [init]
    while frontier:
        next_frontier = []
        for state in frontier:
            for combo in combos:
                post = run_cycle(program, state, combo)
                k = key(post)
                if k not in seen:
                    seen.add(k)
                    next_frontier.append(post)
        frontier = next_frontier
    return seen


def model_reachable(program: CheckedProgram, model: SmvModel) -> set[tuple]:
    """The checker's reachable set, projected the same way as
    interp_reachable."""
    exploration = explore(model)
    assert exploration.complete, "state cap hit on a supposedly small model"
    normalized = apply_default_ranges(program)
    index = {v.name: i for i, v in enumerate(model.state_vars)}
    state_slots = [index[d.name] for d in normalized.state_decls()]
    latch_slots = [index[model.latch_names[d.name]]
                   for d in normalized.input_decls()]
    fault_slot = index[model.fault_var] if model.fault_var else None
    projected = set()
    for state in exploration.parents:
        projected.add(
            tuple(state[i] for i in state_slots)
            + tuple(state[i] for i in latch_slots)
            + ((bool(state[fault_slot]) if fault_slot is not None else False),))
    return projected


def assert_oracle_equivalence(program: CheckedProgram, model=None) -> int:
    """Translation soundness for one program; returns the state count."""
    if model is None:
        model = translate(program, [])
    expected = interp_reachable(program)
    actual = model_reachable(program, model)
    assert expected == actual, (
        f"reachable sets differ: interp-only "
        f"{sorted(expected - actual)[:4]}, model-only "
        f"{sorted(actual - expected)[:4]}")
    return len(expected)


# -- seeded bugs ---------------------------------------------------------------

MUTATIONS = [
    ("AND NOT", "AND"),
    (">=", "<"),
    ("<", ">="),
    (">", "<="),
    ("AND", "OR"),
    ("OR", "AND"),
    ("TRUE", "FALSE"),
    ("FALSE", "TRUE"),
    ("+ 1", "+ 2"),
    ("- 1", "- 0"),
    ("XOR", "AND"),
    ("= 0", "= 1"),
]


def seeded_bug_fixtures(tasks, limit_per_task: int = 3):
    """Mutate corpus reference code; yield (task, program, model, verdict)
    for every mutation that compiles, verifies, and violates some
    non-trivial property."""
    fixtures = []
    for task in tasks:
        produced = 0
        reference = task.reference_code
        assert reference is not None
        for old, new in MUTATIONS:
            if produced >= limit_per_task:
                break
            if old not in reference:
                continue
            mutated = reference.replace(old, new, 1)
            if mutated == reference:
                continue
            report = compile_check(mutated)
            if not report.ok or has_errors(check_verifiable(report.program)):
                continue
            model = translate(report.program, task.properties)
            if model.state_space_size() > 2 ** 16:
                continue
            verdicts = check_internal(model)
            trivial_ids = {p.id for p in task.properties if p.trivial}
            violated = [v for v in verdicts
                        if v.status is VerdictStatus.VIOLATED
                        and v.counterexample
                        and v.property_id not in trivial_ids]
            if not violated:
                continue
            fixtures.append((task, report.program, model, violated[0]))
            produced += 1
    return fixtures
