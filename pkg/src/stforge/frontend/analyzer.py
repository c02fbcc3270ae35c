"""Name resolution and type checking.

Identifiers are case-insensitive per IEC rules: declarations that differ only
by case collide, and references resolve to the declared spelling.  Integer
literals get the narrowest width that fits (INT, else DINT) and widen
implicitly: INT -> DINT -> REAL.  Booleans never mix with arithmetic except
through comparisons.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import ast
from .diagnostics import Diagnostic, SourceSpan, error, has_errors, warning
from .lexer import MAX_DIAGNOSTICS

_WIDEN = {
    (ast.ElemType.INT, ast.ElemType.DINT),
    (ast.ElemType.INT, ast.ElemType.REAL),
    (ast.ElemType.DINT, ast.ElemType.REAL),
}


def _assignable(source: ast.ElemType, target: ast.ElemType) -> bool:
    return source is target or (source, target) in _WIDEN


def _join(a: ast.ElemType, b: ast.ElemType) -> ast.ElemType | None:
    """Common type of two operands under implicit widening, if any."""
    if a is b:
        return a
    if _assignable(a, b):
        return b
    if _assignable(b, a):
        return a
    return None


@dataclass
class CheckedProgram:
    """A type-annotated AST plus its resolved symbol table.

    ``symbols`` maps the lowercased name to the declaration; ``section`` maps
    it to the declaring section.  Expression nodes carry their type in ``ty``.
    """

    program: ast.Program
    symbols: dict[str, ast.VarDecl]
    sections: dict[str, ast.Section]
    # The assignable result variable a FUNCTION's name denotes, if any.
    implicit_result: ast.VarDecl | None = None

    @property
    def name(self) -> str:
        return self.program.name

    def decl(self, name: str) -> ast.VarDecl:
        return self.symbols[name.lower()]

    def section(self, name: str) -> ast.Section:
        return self.sections[name.lower()]

    def input_decls(self) -> list[ast.VarDecl]:
        return self.program.inputs

    def state_decls(self) -> list[ast.VarDecl]:
        """Outputs and locals: the variables that persist across scan cycles."""
        decls = [*self.program.outputs, *self.program.locals]
        if self.implicit_result is not None:
            decls.append(self.implicit_result)
        return decls


@dataclass
class _Analysis:
    checked: CheckedProgram
    diagnostics: list[Diagnostic] = field(default_factory=list)

    def report(self, diag: Diagnostic) -> None:
        if len(self.diagnostics) < MAX_DIAGNOSTICS:
            self.diagnostics.append(diag)

    @property
    def capped(self) -> bool:
        return len(self.diagnostics) >= MAX_DIAGNOSTICS


def analyze(program: ast.Program,
            ) -> tuple[CheckedProgram | None, list[Diagnostic]]:
    checked = CheckedProgram(program, {}, {})
    an = _Analysis(checked)
    _collect_symbols(an, program)
    for stmt in program.body:
        if an.capped:
            break
        _check_statement(an, stmt)
    if has_errors(an.diagnostics):
        return None, an.diagnostics
    return checked, an.diagnostics


def _collect_symbols(an: _Analysis, program: ast.Program) -> None:
    sections = ((ast.Section.INPUT, program.inputs),
                (ast.Section.OUTPUT, program.outputs),
                (ast.Section.LOCAL, program.locals))
    for section, decls in sections:
        for decl in decls:
            key = decl.name.lower()
            if key in an.checked.symbols:
                other = an.checked.symbols[key]
                an.report(error("E-SEM-DUP",
                                f"duplicate declaration of '{decl.name}'",
                                decl.span,
                                hint=f"already declared as '{other.name}' "
                                     f"(names are case-insensitive)"))
                continue
            an.checked.symbols[key] = decl
            an.checked.sections[key] = section
            _check_decl(an, decl)
    if program.kind is ast.PouKind.FUNCTION and program.return_type is not None:
        key = program.name.lower()
        if key in an.checked.symbols:
            an.report(error("E-SEM-DUP",
                            f"variable '{program.name}' collides with the "
                            f"function name", an.checked.symbols[key].span))
        else:
            # The function name is its implicit, assignable result variable.
            result = ast.VarDecl(name=program.name, ty=program.return_type,
                                 span=program.span)
            an.checked.symbols[key] = result
            an.checked.sections[key] = ast.Section.OUTPUT
            an.checked.implicit_result = result


def _check_decl(an: _Analysis, decl: ast.VarDecl) -> None:
    if decl.range is not None:
        if not decl.ty.is_integer:
            an.report(error("E-SEM-RANGE", f"range annotation on '{decl.name}' "
                            f"requires an integer type, not {decl.ty.value}",
                            decl.span))
            return
        lo, hi = decl.range
        width_lo, width_hi = ast.INT_WIDTH_BOUNDS[decl.ty]
        if lo > hi:
            an.report(error("E-SEM-RANGE", f"empty range {lo}..{hi} on "
                            f"'{decl.name}'", decl.span))
        elif lo < width_lo or hi > width_hi:
            an.report(error("E-SEM-RANGE", f"range {lo}..{hi} exceeds the "
                            f"{decl.ty.value} width", decl.span))
    if decl.init is not None:
        init_ty = _literal_type(an, decl.init)
        if init_ty is None:
            return
        if not _assignable(init_ty, decl.ty):
            an.report(error("E-SEM-INIT",
                            f"initializer of '{decl.name}' has type "
                            f"{init_ty.value}, expected {decl.ty.value}",
                            decl.init.span))
            return
        if decl.ty.is_integer:
            width_lo, width_hi = ast.INT_WIDTH_BOUNDS[decl.ty]
            if not (width_lo <= decl.init.value <= width_hi):
                an.report(error("E-SEM-INIT",
                                f"initializer {decl.init.value} does not fit "
                                f"{decl.ty.value}", decl.init.span))
            elif decl.range is not None and not (decl.range[0] <= decl.init.value
                                                 <= decl.range[1]):
                an.report(error("E-SEM-INIT",
                                f"initializer {decl.init.value} outside the "
                                f"declared range {decl.range[0]}..{decl.range[1]}",
                                decl.init.span))


def _literal_type(an: _Analysis, const: ast.Const) -> ast.ElemType | None:
    if const.is_time:
        return ast.ElemType.TIME
    if isinstance(const.value, bool):
        return ast.ElemType.BOOL
    if isinstance(const.value, float):
        return ast.ElemType.REAL
    int_lo, int_hi = ast.INT_WIDTH_BOUNDS[ast.ElemType.INT]
    if int_lo <= const.value <= int_hi:
        return ast.ElemType.INT
    dint_lo, dint_hi = ast.INT_WIDTH_BOUNDS[ast.ElemType.DINT]
    if dint_lo <= const.value <= dint_hi:
        return ast.ElemType.DINT
    an.report(error("E-TYPE-LITERAL", f"integer literal {const.value} does "
                    f"not fit DINT", const.span))
    return None


def _check_statement(an: _Analysis, stmt: ast.Statement) -> None:
    if an.capped:
        return
    if isinstance(stmt, ast.Assign):
        _check_assign(an, stmt)
    elif isinstance(stmt, ast.If):
        _require_bool(an, stmt.cond, "IF condition")
        for s in stmt.then_body:
            _check_statement(an, s)
        for cond, body in stmt.elifs:
            _require_bool(an, cond, "ELSIF condition")
            for s in body:
                _check_statement(an, s)
        for s in stmt.else_body:
            _check_statement(an, s)
    elif isinstance(stmt, ast.Case):
        sel_ty = _type_of(an, stmt.selector)
        if sel_ty is not None and not sel_ty.is_integer:
            an.report(error("E-TYPE-MISMATCH", f"CASE selector must be an "
                            f"integer, got {sel_ty.value}", stmt.selector.span))
        for arm in stmt.arms:
            for s in arm.body:
                _check_statement(an, s)
        for s in stmt.else_body:
            _check_statement(an, s)
    elif isinstance(stmt, ast.For):
        _check_for(an, stmt)
    elif isinstance(stmt, ast.While):
        _require_bool(an, stmt.cond, "WHILE condition")
        for s in stmt.body:
            _check_statement(an, s)
    elif isinstance(stmt, ast.Repeat):
        for s in stmt.body:
            _check_statement(an, s)
        _require_bool(an, stmt.until, "UNTIL condition")
    elif isinstance(stmt, ast.Assert):
        _require_bool(an, stmt.expr, "ASSERT condition")
    elif isinstance(stmt, ast.Empty):
        pass
    else:
        raise TypeError(f"unknown statement node {type(stmt).__name__}")


def _resolve_target(an: _Analysis, name: str, span: SourceSpan) -> ast.VarDecl | None:
    key = name.lower()
    decl = an.checked.symbols.get(key)
    if decl is None:
        an.report(error("E-SEM-UNDECLARED", f"undeclared variable '{name}'", span))
        return None
    if an.checked.sections[key] is ast.Section.INPUT:
        an.report(error("E-SEM-ASSIGN-INPUT",
                        f"cannot assign to input variable '{decl.name}'", span))
        return None
    return decl


def _check_assign(an: _Analysis, stmt: ast.Assign) -> None:
    decl = _resolve_target(an, stmt.target, stmt.span)
    expr_ty = _type_of(an, stmt.expr)
    if decl is None or expr_ty is None:
        return
    if not _assignable(expr_ty, decl.ty):
        an.report(error("E-TYPE-MISMATCH",
                        f"cannot assign {expr_ty.value} to '{decl.name}' of "
                        f"type {decl.ty.value}", stmt.span))


def _check_for(an: _Analysis, stmt: ast.For) -> None:
    decl = _resolve_target(an, stmt.var, stmt.span)
    if decl is not None and not decl.ty.is_integer:
        an.report(error("E-TYPE-MISMATCH", f"FOR variable '{decl.name}' must "
                        f"be an integer, not {decl.ty.value}", stmt.span))
    for bound, what in ((stmt.start, "FOR start bound"),
                        (stmt.stop, "FOR stop bound"),
                        (stmt.step, "FOR step")):
        if bound is None:
            continue
        ty = _type_of(an, bound)
        if ty is not None and not ty.is_integer:
            an.report(error("E-TYPE-MISMATCH",
                            f"{what} must be an integer, got {ty.value}",
                            bound.span))
    for s in stmt.body:
        _check_statement(an, s)


def _require_bool(an: _Analysis, expr: ast.Expression, context: str) -> None:
    ty = _type_of(an, expr)
    if ty is not None and ty is not ast.ElemType.BOOL:
        an.report(error("E-TYPE-MISMATCH",
                        f"{context} must be BOOL, got {ty.value}", expr.span))


def _type_of(an: _Analysis, expr: ast.Expression) -> ast.ElemType | None:
    ty = _infer(an, expr)
    expr.ty = ty
    return ty


def _infer(an: _Analysis, expr: ast.Expression) -> ast.ElemType | None:
    if isinstance(expr, ast.Const):
        return _literal_type(an, expr)
    if isinstance(expr, ast.VarRef):
        decl = an.checked.symbols.get(expr.name.lower())
        if decl is None:
            an.report(error("E-SEM-UNDECLARED",
                            f"undeclared variable '{expr.name}'", expr.span))
            return None
        return decl.ty
    if isinstance(expr, ast.Unary):
        operand_ty = _type_of(an, expr.operand)
        if operand_ty is None:
            return None
        if expr.op is ast.UnaryOp.NOT:
            if operand_ty is not ast.ElemType.BOOL:
                an.report(error("E-TYPE-MISMATCH",
                                f"NOT needs a BOOL operand, got {operand_ty.value}",
                                expr.span))
                return None
            return ast.ElemType.BOOL
        if not operand_ty.is_numeric:
            an.report(error("E-TYPE-MISMATCH",
                            f"unary '-' needs a numeric operand, got "
                            f"{operand_ty.value}", expr.span))
            return None
        return operand_ty
    if isinstance(expr, ast.Binary):
        return _infer_binary(an, expr)
    raise TypeError(f"unknown expression node {type(expr).__name__}")


def _infer_binary(an: _Analysis, expr: ast.Binary) -> ast.ElemType | None:
    left = _type_of(an, expr.left)
    right = _type_of(an, expr.right)
    if left is None or right is None:
        return None
    op = expr.op
    if op in ast.LOGIC_OPS:
        if left is not ast.ElemType.BOOL or right is not ast.ElemType.BOOL:
            an.report(error("E-TYPE-MISMATCH",
                            f"{op.value} needs BOOL operands, got "
                            f"{left.value} and {right.value}", expr.span))
            return None
        return ast.ElemType.BOOL
    if op in ast.COMPARISON_OPS:
        joined = _join(left, right)
        ordered = op not in (ast.BinaryOp.EQ, ast.BinaryOp.NE)
        if joined is None or (joined is ast.ElemType.BOOL and ordered):
            an.report(error("E-TYPE-MISMATCH",
                            f"cannot compare {left.value} with {right.value} "
                            f"using {op.value}", expr.span))
            return None
        return ast.ElemType.BOOL
    # Arithmetic.
    if op is ast.BinaryOp.MOD:
        if not (left.is_integer and right.is_integer):
            an.report(error("E-TYPE-MISMATCH",
                            f"MOD needs integer operands, got {left.value} "
                            f"and {right.value}", expr.span))
            return None
        _warn_division(an, expr)
        return _join(left, right)
    if left is ast.ElemType.TIME or right is ast.ElemType.TIME:
        if left is right and op in (ast.BinaryOp.ADD, ast.BinaryOp.SUB):
            return ast.ElemType.TIME
        an.report(error("E-TYPE-MISMATCH",
                        f"{op.value} not defined for {left.value} and "
                        f"{right.value}", expr.span))
        return None
    if not (left.is_numeric and right.is_numeric):
        an.report(error("E-TYPE-MISMATCH",
                        f"{op.value} needs numeric operands, got {left.value} "
                        f"and {right.value}", expr.span))
        return None
    if op is ast.BinaryOp.DIV:
        _warn_division(an, expr)
    return _join(left, right)


def _warn_division(an: _Analysis, expr: ast.Binary) -> None:
    divisor = expr.right
    if isinstance(divisor, ast.Unary) and divisor.op is ast.UnaryOp.NEG:
        divisor = divisor.operand
    if isinstance(divisor, ast.Const) and divisor.value != 0:
        return
    an.report(warning("W-DIV-ZERO",
                      f"divisor of {expr.op.value} is not provably nonzero",
                      expr.span, hint="a zero divisor faults the scan cycle"))
