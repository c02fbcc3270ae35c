"""Static gate deciding whether a checked program is model-checkable.

A program is verifiable when every variable is BOOL or a range-annotated
integer (unannotated integers get the default range 0..255 with a warning)
and every loop is statically boundable: FOR needs constant bounds, WHILE and
REPEAT need a syntactically decreasing (or increasing) integer counter whose
domain bounds the iteration count.
"""

from __future__ import annotations

import dataclasses

from ..frontend import analyze, ast
from ..frontend.analyzer import CheckedProgram
from ..frontend.diagnostics import Diagnostic, error, warning

DEFAULT_RANGE = (0, 255)
FOR_UNROLL_BOUND = 64


def const_int(expr: ast.Expression) -> int | None:
    """Fold an integer literal, allowing one leading unary minus."""
    if isinstance(expr, ast.Const) and isinstance(expr.value, int) \
            and not isinstance(expr.value, bool) and not expr.is_time:
        return expr.value
    if isinstance(expr, ast.Unary) and expr.op is ast.UnaryOp.NEG:
        inner = const_int(expr.operand)
        return None if inner is None else -inner
    return None


def _assigned_names(stmts: list[ast.Statement]) -> set[str]:
    names: set[str] = set()

    def walk(body: list[ast.Statement]) -> None:
        for stmt in body:
            if isinstance(stmt, ast.Assign):
                names.add(stmt.target.lower())
            elif isinstance(stmt, ast.If):
                walk(stmt.then_body)
                for _, b in stmt.elifs:
                    walk(b)
                walk(stmt.else_body)
            elif isinstance(stmt, ast.Case):
                for arm in stmt.arms:
                    walk(arm.body)
                walk(stmt.else_body)
            elif isinstance(stmt, ast.For):
                names.add(stmt.var.lower())
                walk(stmt.body)
            elif isinstance(stmt, ast.While):
                walk(stmt.body)
            elif isinstance(stmt, ast.Repeat):
                walk(stmt.body)

    walk(stmts)
    return names


@dataclasses.dataclass
class CounterLoop:
    """A while-style loop bounded by a monotone integer counter."""

    var_key: str  # lowercased counter name
    step: int     # signed per-iteration delta
    max_iters: int


def classify_counter_loop(cond: ast.Expression, body: list[ast.Statement],
                          program: CheckedProgram) -> CounterLoop | None:
    """Match ``WHILE v <op> const`` with exactly one top-level update
    ``v := v +/- const`` moving v toward the exit, and no other writes to v."""
    if not isinstance(cond, ast.Binary) or cond.op not in ast.COMPARISON_OPS:
        return None
    if isinstance(cond.left, ast.VarRef) and const_int(cond.right) is not None:
        var_name, op = cond.left.name, cond.op
    elif isinstance(cond.right, ast.VarRef) and const_int(cond.left) is not None:
        flip = {ast.BinaryOp.LT: ast.BinaryOp.GT, ast.BinaryOp.LE: ast.BinaryOp.GE,
                ast.BinaryOp.GT: ast.BinaryOp.LT, ast.BinaryOp.GE: ast.BinaryOp.LE}
        if cond.op not in flip:
            return None
        var_name, op = cond.right.name, flip[cond.op]
    else:
        return None
    if op in (ast.BinaryOp.EQ, ast.BinaryOp.NE):
        return None
    key = var_name.lower()
    decl = program.symbols.get(key)
    if decl is None or not decl.ty.is_integer:
        return None

    # The loop keeps running while v is large (GT/GE) or small (LT/LE).
    need_decreasing = op in (ast.BinaryOp.GT, ast.BinaryOp.GE)

    update_step: int | None = None
    for stmt in body:
        if not isinstance(stmt, ast.Assign) or stmt.target.lower() != key:
            continue
        if update_step is not None:
            return None  # two top-level updates
        e = stmt.expr
        if (isinstance(e, ast.Binary) and e.op in (ast.BinaryOp.ADD, ast.BinaryOp.SUB)
                and isinstance(e.left, ast.VarRef) and e.left.name.lower() == key):
            delta = const_int(e.right)
            if delta is None or delta <= 0:
                return None
            update_step = -delta if e.op is ast.BinaryOp.SUB else delta
        else:
            return None
    if update_step is None:
        return None
    if need_decreasing and update_step >= 0:
        return None
    if not need_decreasing and update_step <= 0:
        return None

    # No other writes anywhere (the top-level update itself is the one write).
    writes = _assigned_names(body)
    nested = [s for s in body if not (isinstance(s, ast.Assign)
                                      and s.target.lower() == key)]
    if key in _assigned_names(nested):
        return None
    assert key in writes

    rng = decl.range if decl.range is not None else DEFAULT_RANGE
    max_iters = (rng[1] - rng[0]) // abs(update_step) + 1
    return CounterLoop(var_key=key, step=update_step, max_iters=max_iters)


def _check_loops(program: CheckedProgram, stmts: list[ast.Statement],
                 diagnostics: list[Diagnostic]) -> None:
    for stmt in stmts:
        if isinstance(stmt, ast.For):
            start = const_int(stmt.start)
            stop = const_int(stmt.stop)
            step = const_int(stmt.step) if stmt.step is not None else 1
            if start is None or stop is None or step is None:
                diagnostics.append(error(
                    "E-VERIF-UNBOUNDED-LOOP",
                    "FOR bounds must be integer constants for verification",
                    stmt.span))
            elif step == 0:
                diagnostics.append(error(
                    "E-VERIF-UNBOUNDED-LOOP", "FOR step must be nonzero",
                    stmt.span))
            elif stmt.var.lower() in _assigned_names(stmt.body):
                diagnostics.append(error(
                    "E-VERIF-UNBOUNDED-LOOP",
                    f"loop variable '{stmt.var}' must not be assigned in the "
                    f"FOR body", stmt.span))
            else:
                iterations = max(0, (stop - start) // step + 1)
                if iterations > FOR_UNROLL_BOUND:
                    diagnostics.append(error(
                        "E-VERIF-UNROLL",
                        f"FOR loop runs {iterations} iterations, above the "
                        f"unroll bound {FOR_UNROLL_BOUND}", stmt.span))
            _check_loops(program, stmt.body, diagnostics)
        elif isinstance(stmt, ast.While):
            info = classify_counter_loop(stmt.cond, stmt.body, program)
            if info is None:
                diagnostics.append(error(
                    "E-VERIF-UNBOUNDED-LOOP",
                    "WHILE needs a single monotone integer counter bounded "
                    "by a constant", stmt.span,
                    hint="compare one counter variable against a constant and "
                         "step it by a constant each iteration"))
            elif info.max_iters > FOR_UNROLL_BOUND:
                diagnostics.append(error(
                    "E-VERIF-UNROLL",
                    f"WHILE may run {info.max_iters} iterations, above the "
                    f"unroll bound {FOR_UNROLL_BOUND}", stmt.span))
            _check_loops(program, stmt.body, diagnostics)
        elif isinstance(stmt, ast.Repeat):
            info = _classify_repeat(stmt, program)
            if info is None:
                diagnostics.append(error(
                    "E-VERIF-UNBOUNDED-LOOP",
                    "REPEAT needs a single monotone integer counter bounded "
                    "by a constant", stmt.span))
            elif info.max_iters + 1 > FOR_UNROLL_BOUND:
                diagnostics.append(error(
                    "E-VERIF-UNROLL",
                    f"REPEAT may run {info.max_iters + 1} iterations, above "
                    f"the unroll bound {FOR_UNROLL_BOUND}", stmt.span))
            _check_loops(program, stmt.body, diagnostics)
        elif isinstance(stmt, ast.If):
            _check_loops(program, stmt.then_body, diagnostics)
            for _, body in stmt.elifs:
                _check_loops(program, body, diagnostics)
            _check_loops(program, stmt.else_body, diagnostics)
        elif isinstance(stmt, ast.Case):
            for arm in stmt.arms:
                _check_loops(program, arm.body, diagnostics)
            _check_loops(program, stmt.else_body, diagnostics)


def invert_comparison(cond: ast.Expression) -> ast.Binary | None:
    """Negate a comparison by flipping its operator (x < c becomes x >= c)."""
    if not isinstance(cond, ast.Binary) or cond.op not in ast.COMPARISON_OPS:
        return None
    negated = {ast.BinaryOp.LT: ast.BinaryOp.GE, ast.BinaryOp.LE: ast.BinaryOp.GT,
               ast.BinaryOp.GT: ast.BinaryOp.LE, ast.BinaryOp.GE: ast.BinaryOp.LT,
               ast.BinaryOp.EQ: ast.BinaryOp.NE, ast.BinaryOp.NE: ast.BinaryOp.EQ}
    inverted = ast.Binary(span=cond.span, op=negated[cond.op],
                          left=cond.left, right=cond.right)
    inverted.ty = ast.ElemType.BOOL
    return inverted


def _classify_repeat(stmt: ast.Repeat, program: CheckedProgram) -> CounterLoop | None:
    """REPEAT body UNTIL v <op> c: loop continues while the negation holds."""
    inverted = invert_comparison(stmt.until)
    if inverted is None:
        return None
    return classify_counter_loop(inverted, stmt.body, program)


def check_verifiable(program: CheckedProgram) -> list[Diagnostic]:
    """Empty result (or warnings only) means the program can be translated."""
    diagnostics: list[Diagnostic] = []
    for decl in [*program.program.all_decls(),
                 *([program.implicit_result] if program.implicit_result else [])]:
        if decl.ty in (ast.ElemType.REAL, ast.ElemType.TIME):
            diagnostics.append(error(
                "E-VERIF-REAL",
                f"variable '{decl.name}' has type {decl.ty.value}, which the "
                f"verifier cannot represent", decl.span))
        elif decl.ty.is_integer and decl.range is None:
            init = decl.init.value if decl.init is not None else None
            if init is not None and not (DEFAULT_RANGE[0] <= init <= DEFAULT_RANGE[1]):
                diagnostics.append(error(
                    "E-VERIF-RANGE-MISSING",
                    f"'{decl.name}' is initialized to {init}, outside the "
                    f"default verification range "
                    f"{DEFAULT_RANGE[0]}..{DEFAULT_RANGE[1]}", decl.span,
                    hint="annotate an explicit range, e.g. "
                         f"{decl.ty.value} ({init}..{init + 10})"))
            else:
                diagnostics.append(warning(
                    "W-VERIF-RANGE-DEFAULT",
                    f"'{decl.name}' has no range annotation; assuming "
                    f"{DEFAULT_RANGE[0]}..{DEFAULT_RANGE[1]}", decl.span))
    _check_loops(program, program.program.body, diagnostics)
    return diagnostics


def apply_default_ranges(program: CheckedProgram) -> CheckedProgram:
    """Rebuild the program with the default range on unannotated integers,
    so the interpreter and the translated model share one set of domains."""
    changed = False

    def fix(decl: ast.VarDecl) -> ast.VarDecl:
        nonlocal changed
        if decl.ty.is_integer and decl.range is None:
            changed = True
            return dataclasses.replace(decl, range=DEFAULT_RANGE)
        return decl

    src = program.program
    if not any(d.ty.is_integer and d.range is None for d in src.all_decls()):
        return program
    rebuilt = dataclasses.replace(
        src,
        inputs=[fix(d) for d in src.inputs],
        outputs=[fix(d) for d in src.outputs],
        locals=[fix(d) for d in src.locals],
    )
    checked, diags = analyze(rebuilt)
    if checked is None:  # pragma: no cover - the original analyzed cleanly
        raise AssertionError(f"default-range rebuild failed: {diags}")
    return checked
