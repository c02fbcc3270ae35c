"""Symbolic execution of one scan cycle into an SMV transition system.

One SMV transition is one scan cycle: inputs are unconstrained IVARs, each
state variable's ``next`` is the symbolic image of the body (IF/CASE become
guarded case trees, FOR loops unroll over their constant bounds, WHILE and
REPEAT unroll up to the counter-derived iteration bound).

Runtime faults (division by zero, an assignment escaping its declared range)
are collected into a single boolean fault condition; a faulting cycle leaves
every state variable unchanged, mirroring the interpreter's abort semantics.

Instrumentation variables (all outside the ST identifier space, which cannot
start with '_'):

- ``_cycled``        false only in the initial state; properties are guarded
  with it so they constrain post-cycle states only;
- ``_latch_<in>``    records the input value used by the cycle that produced
  a state, so properties may refer to inputs;
- ``_assert_ok_<i>`` conjunction of guarded ASSERT conditions at site ``i``
  during the last cycle;
- ``_fault``         true when the last cycle aborted.
"""

from __future__ import annotations

from ..frontend import ast, format_expression, typecheck_expression
from ..frontend.analyzer import CheckedProgram
from ..frontend.diagnostics import error
from ..interp import default_value
from .model import (FALSE, TRUE, Property, PropertyKind, SBinary, SCase,
                    SConst, SInput, SmvExpr, SmvModel, SmvVar, SUnary, SVar,
                    TranslationError, expr_size, s_and, s_case, s_implies,
                    s_not, s_or)
from .verifiable import (FOR_UNROLL_BOUND, apply_default_ranges,
                         classify_counter_loop, const_int, invert_comparison)

DEFAULT_NODE_CAP = 200_000

Bounds = tuple[int, int]


def _wrap_int(value: int, ty: ast.ElemType) -> int:
    lo, hi = ast.INT_WIDTH_BOUNDS[ty]
    if lo <= value <= hi:
        return value
    width = hi - lo + 1
    return (value - lo) % width + lo


def _trunc_div(a: int, b: int) -> int:
    q = abs(a) // abs(b)
    return q if (a >= 0) == (b >= 0) else -q


class _Translator:
    def __init__(self, program: CheckedProgram) -> None:
        self.program = program
        self.fault: SmvExpr = FALSE
        self.assert_sites: list[ast.Assert] = _collect_asserts(program.program.body)
        self.assert_acc: list[SmvExpr] = [TRUE for _ in self.assert_sites]
        self._site_index = {id(site): i for i, site in enumerate(self.assert_sites)}
        self.domains: dict[str, Bounds | None] = {}
        for decl in [*program.input_decls(), *program.state_decls()]:
            self.domains[decl.name] = None if decl.ty is ast.ElemType.BOOL \
                else decl.range
        self._bounds_memo: dict[int, Bounds] = {}

    # -- interval analysis --------------------------------------------------

    def bounds(self, expr: SmvExpr) -> Bounds:
        memo = self._bounds_memo.get(id(expr))
        if memo is not None:
            return memo
        result = self._bounds(expr)
        self._bounds_memo[id(expr)] = result
        return result

    def _bounds(self, expr: SmvExpr) -> Bounds:
        if isinstance(expr, SConst):
            assert not isinstance(expr.value, bool)
            return expr.value, expr.value
        if isinstance(expr, (SVar, SInput)):
            domain = self.domains[expr.name]
            assert domain is not None, f"{expr.name} is boolean"
            return domain
        if isinstance(expr, SUnary):
            lo, hi = self.bounds(expr.operand)
            return -hi, -lo
        if isinstance(expr, SCase):
            los, his = zip(*(self.bounds(v) for _, v in expr.branches))
            return min(los), max(his)
        if isinstance(expr, SBinary):
            if expr.op in ("+", "-", "*"):
                a_lo, a_hi = self.bounds(expr.left)
                b_lo, b_hi = self.bounds(expr.right)
                if expr.op == "+":
                    return a_lo + b_lo, a_hi + b_hi
                if expr.op == "-":
                    return a_lo - b_hi, a_hi - b_lo
                corners = [a * b for a in (a_lo, a_hi) for b in (b_lo, b_hi)]
                return min(corners), max(corners)
            if expr.op == "/":
                a_lo, a_hi = self.bounds(expr.left)
                b_lo, b_hi = self.bounds(expr.right)
                divisors = {d for d in (b_lo, b_hi, -1, 1)
                            if d != 0 and b_lo <= d <= b_hi}
                if not divisors:
                    return 0, 0  # divisor always 0: value is the guarded default
                corners = [_trunc_div(a, b) for a in (a_lo, a_hi) for b in divisors]
                return min(corners), max(corners)
            if expr.op == "mod":
                # Truncating remainder: sign follows the dividend, magnitude
                # below both |divisor| and |dividend|.
                a_lo, a_hi = self.bounds(expr.left)
                b_lo, b_hi = self.bounds(expr.right)
                m = max(abs(b_lo), abs(b_hi), 1)
                lo = 0 if a_lo >= 0 else max(-(m - 1), a_lo)
                hi = 0 if a_hi <= 0 else min(m - 1, a_hi)
                return lo, hi
        raise AssertionError(f"no integer bounds for {expr!r}")

    # -- expression translation ----------------------------------------------

    def add_fault(self, guard: SmvExpr, cond: SmvExpr) -> None:
        self.fault = s_or(self.fault, s_and(guard, cond))

    def arith(self, op: str, left: SmvExpr, right: SmvExpr,
              ty: ast.ElemType) -> SmvExpr:
        if isinstance(left, SConst) and isinstance(right, SConst):
            a, b = left.value, right.value
            folded = a + b if op == "+" else a - b if op == "-" else a * b
            return SConst(_wrap_int(folded, ty))
        return self.wrap(SBinary(op, left, right), ty)

    def wrap(self, expr: SmvExpr, ty: ast.ElemType) -> SmvExpr:
        """Wrap two's-complement at the type width when the value can
        overflow it; otherwise pass through."""
        lo_w, hi_w = ast.INT_WIDTH_BOUNDS[ty]
        lo, hi = self.bounds(expr)
        if lo_w <= lo and hi <= hi_w:
            return expr
        width = hi_w - lo_w + 1
        shifted = SBinary("-", expr, SConst(lo_w))
        reduced = SBinary("mod", shifted, SConst(width))
        non_negative = SBinary("mod", SBinary("+", reduced, SConst(width)),
                               SConst(width))
        wrapped = SBinary("+", non_negative, SConst(lo_w))
        self._bounds_memo[id(wrapped)] = (lo_w, hi_w)
        return wrapped

    def compare(self, op: str, left: SmvExpr, right: SmvExpr) -> SmvExpr:
        if isinstance(left, SConst) and isinstance(right, SConst):
            a, b = left.value, right.value
            result = {"=": a == b, "!=": a != b, "<": a < b, "<=": a <= b,
                      ">": a > b, ">=": a >= b}[op]
            return SConst(result)
        return SBinary(op, left, right)

    def to_smv(self, expr: ast.Expression, env: dict[str, SmvExpr],
               guard: SmvExpr, collect_faults: bool = True) -> SmvExpr:
        if isinstance(expr, ast.Const):
            if isinstance(expr.value, bool):
                return SConst(expr.value)
            assert isinstance(expr.value, int) and not expr.is_time
            return SConst(expr.value)
        if isinstance(expr, ast.VarRef):
            return env[self.program.decl(expr.name).name]
        if isinstance(expr, ast.Unary):
            operand = self.to_smv(expr.operand, env, guard, collect_faults)
            if expr.op is ast.UnaryOp.NOT:
                return s_not(operand)
            if isinstance(operand, SConst):
                assert expr.ty is not None
                return SConst(_wrap_int(-operand.value, expr.ty))
            assert expr.ty is not None
            return self.wrap(SUnary("-", operand), expr.ty)
        if isinstance(expr, ast.Binary):
            return self.binary_to_smv(expr, env, guard, collect_faults)
        raise TypeError(f"unknown expression node {type(expr).__name__}")

    def binary_to_smv(self, expr: ast.Binary, env: dict[str, SmvExpr],
                      guard: SmvExpr, collect_faults: bool) -> SmvExpr:
        op = expr.op
        left = self.to_smv(expr.left, env, guard, collect_faults)
        right = self.to_smv(expr.right, env, guard, collect_faults)
        if op is ast.BinaryOp.AND:
            return s_and(left, right)
        if op is ast.BinaryOp.OR:
            return s_or(left, right)
        if op is ast.BinaryOp.XOR:
            if isinstance(left, SConst) and isinstance(right, SConst):
                return SConst(bool(left.value) != bool(right.value))
            return SBinary("xor", left, right)
        if op in ast.COMPARISON_OPS:
            smv_op = {ast.BinaryOp.EQ: "=", ast.BinaryOp.NE: "!=",
                      ast.BinaryOp.LT: "<", ast.BinaryOp.LE: "<=",
                      ast.BinaryOp.GT: ">", ast.BinaryOp.GE: ">="}[op]
            return self.compare(smv_op, left, right)
        assert expr.ty is not None and expr.ty.is_integer
        if op in (ast.BinaryOp.ADD, ast.BinaryOp.SUB, ast.BinaryOp.MUL):
            smv_op = {ast.BinaryOp.ADD: "+", ast.BinaryOp.SUB: "-",
                      ast.BinaryOp.MUL: "*"}[op]
            return self.arith(smv_op, left, right, expr.ty)
        # Division and MOD: guard the zero-divisor case so the emitted
        # expression stays total; the fault condition handles semantics.
        smv_op = "/" if op is ast.BinaryOp.DIV else "mod"
        if isinstance(left, SConst) and isinstance(right, SConst) \
                and right.value != 0:
            a, b = left.value, right.value
            folded = _trunc_div(a, b) if smv_op == "/" else a - _trunc_div(a, b) * b
            return SConst(_wrap_int(folded, expr.ty))
        divisor_bounds = self.bounds(right)
        can_be_zero = divisor_bounds[0] <= 0 <= divisor_bounds[1]
        raw = SBinary(smv_op, left, right)
        if not can_be_zero:
            return self.wrap(raw, expr.ty)
        zero = self.compare("=", right, SConst(0))
        if collect_faults:
            self.add_fault(guard, zero)
        guarded = s_case([(zero, SConst(0)), (TRUE, raw)])
        return self.wrap(guarded, expr.ty)

    # -- statement execution ---------------------------------------------

    def exec_block(self, env: dict[str, SmvExpr], stmts: list[ast.Statement],
                   guard: SmvExpr) -> None:
        for stmt in stmts:
            self.exec_stmt(env, stmt, guard)

    def assign(self, env: dict[str, SmvExpr], target: str, value: SmvExpr,
               guard: SmvExpr) -> None:
        decl = self.program.decl(target)
        if decl.ty.is_integer:
            rng = decl.range
            assert rng is not None, "integer ranges are normalized before translation"
            lo, hi = self.bounds(value)
            if lo < rng[0] or hi > rng[1]:
                in_range = s_and(self.compare(">=", value, SConst(rng[0])),
                                 self.compare("<=", value, SConst(rng[1])))
                self.add_fault(guard, s_not(in_range))
        env[decl.name] = value

    def exec_stmt(self, env: dict[str, SmvExpr], stmt: ast.Statement,
                  guard: SmvExpr) -> None:
        if isinstance(stmt, ast.Assign):
            value = self.to_smv(stmt.expr, env, guard)
            self.assign(env, stmt.target, value, guard)
        elif isinstance(stmt, ast.If):
            self.exec_if(env, stmt, guard)
        elif isinstance(stmt, ast.Case):
            self.exec_case(env, stmt, guard)
        elif isinstance(stmt, ast.For):
            self.exec_for(env, stmt, guard)
        elif isinstance(stmt, ast.While):
            self.exec_while(env, stmt.cond, stmt.body, guard, stmt,
                            prime_body=False)
        elif isinstance(stmt, ast.Repeat):
            continue_cond = invert_comparison(stmt.until)
            if continue_cond is None:
                raise TranslationError(error(
                    "E-VERIF-UNBOUNDED-LOOP",
                    "REPEAT condition must compare a counter with a constant",
                    stmt.span))
            self.exec_while(env, continue_cond, stmt.body, guard, stmt,
                            prime_body=True)
        elif isinstance(stmt, ast.Assert):
            cond = self.to_smv(stmt.expr, env, guard)
            site = self._site_index[id(stmt)]
            self.assert_acc[site] = s_and(self.assert_acc[site],
                                          s_implies(guard, cond))
        elif isinstance(stmt, ast.Empty):
            pass
        else:
            raise TypeError(f"unknown statement node {type(stmt).__name__}")

    def _merge(self, branches: list[tuple[SmvExpr, dict[str, SmvExpr]]],
               otherwise: dict[str, SmvExpr]) -> dict[str, SmvExpr]:
        merged: dict[str, SmvExpr] = {}
        for name in otherwise:
            cases = [(g, env[name]) for g, env in branches]
            cases.append((TRUE, otherwise[name]))
            merged[name] = s_case(cases)
        return merged

    def exec_if(self, env: dict[str, SmvExpr], stmt: ast.If,
                guard: SmvExpr) -> None:
        # The merge case tree is first-match, so each branch merges under its
        # own condition; the guard chain is only for fault/assert attribution.
        arms: list[tuple[ast.Expression, list[ast.Statement]]] = [
            (stmt.cond, stmt.then_body), *stmt.elifs]
        branches: list[tuple[SmvExpr, dict[str, SmvExpr]]] = []
        taken = FALSE  # some earlier condition held
        for cond_ast, body in arms:
            path = s_and(guard, s_not(taken))
            cond = self.to_smv(cond_ast, env, path)
            branch_env = dict(env)
            self.exec_block(branch_env, body, s_and(path, cond))
            branches.append((cond, branch_env))
            taken = s_or(taken, cond)
        else_env = dict(env)
        self.exec_block(else_env, stmt.else_body, s_and(guard, s_not(taken)))
        env.update(self._merge(branches, else_env))

    def exec_case(self, env: dict[str, SmvExpr], stmt: ast.Case,
                  guard: SmvExpr) -> None:
        selector = self.to_smv(stmt.selector, env, guard)
        branches: list[tuple[SmvExpr, dict[str, SmvExpr]]] = []
        taken = FALSE
        for arm in stmt.arms:
            match = FALSE
            for label in arm.labels:
                if isinstance(label, tuple):
                    test = s_and(self.compare(">=", selector, SConst(label[0])),
                                 self.compare("<=", selector, SConst(label[1])))
                else:
                    test = self.compare("=", selector, SConst(label))
                match = s_or(match, test)
            branch_env = dict(env)
            self.exec_block(branch_env, arm.body,
                            s_and(guard, s_and(s_not(taken), match)))
            branches.append((match, branch_env))
            taken = s_or(taken, match)
        else_env = dict(env)
        self.exec_block(else_env, stmt.else_body, s_and(guard, s_not(taken)))
        env.update(self._merge(branches, else_env))

    def exec_for(self, env: dict[str, SmvExpr], stmt: ast.For,
                 guard: SmvExpr) -> None:
        start = const_int(stmt.start)
        stop = const_int(stmt.stop)
        step = const_int(stmt.step) if stmt.step is not None else 1
        if start is None or stop is None or step is None or step == 0:
            raise TranslationError(error(
                "E-VERIF-UNBOUNDED-LOOP",
                "FOR bounds must be nonzero integer constants", stmt.span))
        decl = self.program.decl(stmt.var)
        self.assign(env, stmt.var, SConst(start), guard)
        value = start
        iterations = 0
        while (step > 0 and value <= stop) or (step < 0 and value >= stop):
            iterations += 1
            if iterations > FOR_UNROLL_BOUND:
                raise TranslationError(error(
                    "E-VERIF-UNROLL",
                    f"FOR loop exceeds the unroll bound {FOR_UNROLL_BOUND}",
                    stmt.span))
            self.exec_block(env, stmt.body, guard)
            value = _wrap_int(value + step, decl.ty)
            self.assign(env, stmt.var, SConst(value), guard)

    def exec_while(self, env: dict[str, SmvExpr], cond: ast.Expression,
                   body: list[ast.Statement], guard: SmvExpr,
                   stmt: ast.Statement, prime_body: bool) -> None:
        if prime_body:  # REPEAT executes its body before the first test
            self.exec_block(env, body, guard)
        info = classify_counter_loop(cond, body, self.program)
        if info is None:
            raise TranslationError(error(
                "E-VERIF-UNBOUNDED-LOOP",
                "loop has no statically bounded counter", stmt.span))
        if info.max_iters > FOR_UNROLL_BOUND:
            raise TranslationError(error(
                "E-VERIF-UNROLL",
                f"loop may run {info.max_iters} iterations, above the unroll "
                f"bound {FOR_UNROLL_BOUND}", stmt.span))
        running = guard
        for _ in range(info.max_iters):
            test = self.to_smv(cond, env, running)
            if test == FALSE:
                break
            inner = s_and(running, test)
            branch_env = dict(env)
            self.exec_block(branch_env, body, inner)
            env.update(self._merge([(test, branch_env)], env))
            running = inner


def _collect_asserts(stmts: list[ast.Statement]) -> list[ast.Assert]:
    sites: list[ast.Assert] = []

    def walk(body: list[ast.Statement]) -> None:
        for stmt in body:
            if isinstance(stmt, ast.Assert):
                sites.append(stmt)
            elif isinstance(stmt, ast.If):
                walk(stmt.then_body)
                for _, b in stmt.elifs:
                    walk(b)
                walk(stmt.else_body)
            elif isinstance(stmt, ast.Case):
                for arm in stmt.arms:
                    walk(arm.body)
                walk(stmt.else_body)
            elif isinstance(stmt, (ast.For, ast.While)):
                walk(stmt.body)
            elif isinstance(stmt, ast.Repeat):
                walk(stmt.body)

    walk(stmts)
    return sites


CYCLED_VAR = "_cycled"
FAULT_VAR = "_fault"


def latch_name(input_name: str) -> str:
    return f"_latch_{input_name}"


def assert_flag_name(site: int) -> str:
    return f"_assert_ok_{site}"


def translate(program: CheckedProgram, properties: list[Property],
              node_cap: int = DEFAULT_NODE_CAP) -> SmvModel:
    """Translate a verifiable program and its properties into an SmvModel.

    Preconditions: ``check_verifiable`` reported no errors and every property
    expression type-checks as BOOL against the program's declarations.
    """
    program = apply_default_ranges(program)
    tr = _Translator(program)

    env: dict[str, SmvExpr] = {}
    for decl in program.input_decls():
        env[decl.name] = SInput(decl.name)
    for decl in program.state_decls():
        env[decl.name] = SVar(decl.name)
    tr.exec_block(env, program.program.body, TRUE)

    def domain_of(decl: ast.VarDecl) -> tuple[int, int] | None:
        return None if decl.ty is ast.ElemType.BOOL else decl.range

    state_vars: list[SmvVar] = []
    next_map: dict[str, SmvExpr] = {}
    program_vars: list[str] = []
    for decl in program.state_decls():
        state_vars.append(SmvVar(decl.name, domain_of(decl),
                                 init=default_value(decl)))
        next_map[decl.name] = env[decl.name]
        program_vars.append(decl.name)

    fault_var = None
    if tr.fault != FALSE:
        fault_var = FAULT_VAR
        # A faulting cycle leaves outputs and locals unchanged; assertion
        # flags reset to vacuously true because the aborted cycle had no
        # effect.  Input latches still record what drove the cycle.
        for name in list(next_map):
            next_map[name] = s_case([(tr.fault, SVar(name)),
                                     (TRUE, next_map[name])])

    latches: dict[str, str] = {}
    input_vars: list[SmvVar] = []
    for decl in program.input_decls():
        input_vars.append(SmvVar(decl.name, domain_of(decl), init=None))
        latch = latch_name(decl.name)
        latches[decl.name] = latch
        state_vars.append(SmvVar(latch, domain_of(decl),
                                 init=default_value(decl)))
        next_map[latch] = SInput(decl.name)
        tr.domains[latch] = tr.domains[decl.name]

    for site in range(len(tr.assert_sites)):
        flag = assert_flag_name(site)
        state_vars.append(SmvVar(flag, None, init=True))
        if fault_var is not None:
            next_map[flag] = s_case([(tr.fault, TRUE),
                                     (TRUE, tr.assert_acc[site])])
        else:
            next_map[flag] = tr.assert_acc[site]

    if fault_var is not None:
        state_vars.append(SmvVar(FAULT_VAR, None, init=False))
        next_map[FAULT_VAR] = tr.fault

    state_vars.append(SmvVar(CYCLED_VAR, None, init=False))
    next_map[CYCLED_VAR] = TRUE

    site_by_text = {}
    for i, site in enumerate(tr.assert_sites):
        text = format_expression(site.expr).lower()
        site_by_text.setdefault(text, i)

    prop_env: dict[str, SmvExpr] = {}
    for decl in program.input_decls():
        prop_env[decl.name] = SVar(latches[decl.name])
    for decl in program.state_decls():
        prop_env[decl.name] = SVar(decl.name)

    all_decls = [*program.input_decls(), *program.state_decls()]
    invarspecs: list[tuple[str, SmvExpr]] = []
    for prop in properties:
        ty, _ = typecheck_expression(prop.expr, all_decls)
        if ty is not ast.ElemType.BOOL:
            raise ValueError(f"property {prop.id!r} does not type-check as "
                             f"BOOL against program {program.name!r}")
        site = None
        if prop.kind is PropertyKind.ASSERTION:
            site = site_by_text.get(format_expression(prop.expr).lower())
        if site is not None:
            spec = SVar(assert_flag_name(site))
        else:
            body = tr.to_smv(prop.expr, prop_env, TRUE, collect_faults=False)
            spec = s_implies(SVar(CYCLED_VAR), body)
        invarspecs.append((prop.id, spec))

    total_nodes = sum(expr_size(e) for e in next_map.values())
    total_nodes += sum(expr_size(e) for _, e in invarspecs)
    if total_nodes > node_cap:
        raise TranslationError(error(
            "E-VERIF-BLOWUP",
            f"translated model has {total_nodes} expression nodes, above the "
            f"cap {node_cap}", program.program.span))

    return SmvModel(
        name=program.name,
        state_vars=state_vars,
        input_vars=input_vars,
        next=next_map,
        invarspecs=invarspecs,
        program_vars=program_vars,
        latch_names=latches,
        fault_var=fault_var,
    )
