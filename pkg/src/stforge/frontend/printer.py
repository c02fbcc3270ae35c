"""Pretty-printer producing canonical ST text that reparses to the same AST."""

from __future__ import annotations

from . import ast

# Binding strength, mirroring the parser's precedence ladder.
_PRECEDENCE = {
    ast.BinaryOp.OR: 1,
    ast.BinaryOp.XOR: 2,
    ast.BinaryOp.AND: 3,
    ast.BinaryOp.EQ: 4, ast.BinaryOp.NE: 4,
    ast.BinaryOp.LT: 5, ast.BinaryOp.LE: 5, ast.BinaryOp.GT: 5, ast.BinaryOp.GE: 5,
    ast.BinaryOp.ADD: 6, ast.BinaryOp.SUB: 6,
    ast.BinaryOp.MUL: 7, ast.BinaryOp.DIV: 7, ast.BinaryOp.MOD: 7,
}
_UNARY_PRECEDENCE = 8


def format_const(node: ast.Const) -> str:
    if node.is_time:
        return f"T#{node.value}ms"
    if isinstance(node.value, bool):
        return "TRUE" if node.value else "FALSE"
    if isinstance(node.value, float):
        return repr(node.value)
    return str(node.value)


def format_expression(node: ast.Expression) -> str:
    return _expr(node)


def _expr(node: ast.Expression) -> str:
    if isinstance(node, ast.Const):
        return format_const(node)
    if isinstance(node, ast.VarRef):
        return node.name
    if isinstance(node, ast.Unary):
        operand = _expr_child(node.operand, _UNARY_PRECEDENCE, right=False)
        if node.op is ast.UnaryOp.NOT:
            return f"NOT {operand}"
        return f"-{operand}"
    if isinstance(node, ast.Binary):
        prec = _PRECEDENCE[node.op]
        left = _expr_child(node.left, prec, right=False)
        right = _expr_child(node.right, prec, right=True)
        return f"{left} {node.op.value} {right}"
    raise TypeError(f"unknown expression node {type(node).__name__}")


def _expr_child(node: ast.Expression, parent_prec: int, right: bool) -> str:
    text = _expr(node)
    if isinstance(node, ast.Binary):
        prec = _PRECEDENCE[node.op]
        if prec < parent_prec or (right and prec == parent_prec):
            return f"({text})"
    # A negative literal on the right of an operator ('a - -1') parses fine,
    # but '-' applied twice ('--1') relies on the lexer splitting tokens, so
    # parenthesize unary operands of unary for readability.
    return text


def _decl(decl: ast.VarDecl) -> str:
    text = f"{decl.name} : {decl.ty.value}"
    if decl.range is not None:
        text += f" ({decl.range[0]}..{decl.range[1]})"
    if decl.init is not None:
        text += f" := {format_const(decl.init)}"
    return text + ";"


def _label(label) -> str:
    if isinstance(label, tuple):
        return f"{label[0]}..{label[1]}"
    return str(label)


class _Printer:
    def __init__(self) -> None:
        self.lines: list[str] = []
        self.depth = 0

    def emit(self, text: str) -> None:
        self.lines.append("    " * self.depth + text)

    def block(self, stmts: list[ast.Statement]) -> None:
        self.depth += 1
        for stmt in stmts:
            self.statement(stmt)
        self.depth -= 1

    def statement(self, stmt: ast.Statement) -> None:
        if isinstance(stmt, ast.Assign):
            self.emit(f"{stmt.target} := {_expr(stmt.expr)};")
        elif isinstance(stmt, ast.If):
            self.emit(f"IF {_expr(stmt.cond)} THEN")
            self.block(stmt.then_body)
            for cond, body in stmt.elifs:
                self.emit(f"ELSIF {_expr(cond)} THEN")
                self.block(body)
            if stmt.else_body:
                self.emit("ELSE")
                self.block(stmt.else_body)
            self.emit("END_IF;")
        elif isinstance(stmt, ast.Case):
            self.emit(f"CASE {_expr(stmt.selector)} OF")
            self.depth += 1
            for arm in stmt.arms:
                self.emit(", ".join(_label(l) for l in arm.labels) + ":")
                self.block(arm.body)
            if stmt.else_body:
                self.emit("ELSE")
                self.block(stmt.else_body)
            self.depth -= 1
            self.emit("END_CASE;")
        elif isinstance(stmt, ast.For):
            header = f"FOR {stmt.var} := {_expr(stmt.start)} TO {_expr(stmt.stop)}"
            if stmt.step is not None:
                header += f" BY {_expr(stmt.step)}"
            self.emit(header + " DO")
            self.block(stmt.body)
            self.emit("END_FOR;")
        elif isinstance(stmt, ast.While):
            self.emit(f"WHILE {_expr(stmt.cond)} DO")
            self.block(stmt.body)
            self.emit("END_WHILE;")
        elif isinstance(stmt, ast.Repeat):
            self.emit("REPEAT")
            self.block(stmt.body)
            self.emit(f"UNTIL {_expr(stmt.until)}")
            self.emit("END_REPEAT;")
        elif isinstance(stmt, ast.Assert):
            self.emit(f"ASSERT({_expr(stmt.expr)});")
        elif isinstance(stmt, ast.Empty):
            self.emit(";")
        else:
            raise TypeError(f"unknown statement node {type(stmt).__name__}")


def pretty_print(program: ast.Program) -> str:
    p = _Printer()
    header = f"{program.kind.value} {program.name}"
    if program.return_type is not None:
        header += f" : {program.return_type.value}"
    p.emit(header)
    for section_kw, decls in (("VAR_INPUT", program.inputs),
                              ("VAR_OUTPUT", program.outputs),
                              ("VAR", program.locals)):
        if decls:
            p.emit(section_kw)
            p.depth += 1
            for decl in decls:
                p.emit(_decl(decl))
            p.depth -= 1
            p.emit("END_VAR")
    for stmt in program.body:
        p.statement(stmt)
    p.emit(f"END_{program.kind.value}")
    return "\n".join(p.lines) + "\n"
