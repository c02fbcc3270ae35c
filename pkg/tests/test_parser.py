from __future__ import annotations

import pytest
from helpers import LED_SOURCE, parse_source

from stforge.frontend import ast, parse, tokenize


def parse_with_errors(source):
    tokens, _ = tokenize(source)
    return parse(tokens)


def test_minimal_program():
    program = parse_source("PROGRAM p END_PROGRAM")
    assert program.kind is ast.PouKind.PROGRAM
    assert program.name == "p"
    assert program.inputs == [] and program.outputs == [] and program.locals == []
    assert program.body == []


def test_led_function_block():
    program = parse_source(LED_SOURCE)
    assert program.kind is ast.PouKind.FUNCTION_BLOCK
    assert [d.name for d in program.inputs] == ["PB1", "PB2"]
    assert [d.name for d in program.outputs] == ["LED"]
    assert len(program.body) == 1
    stmt = program.body[0]
    assert isinstance(stmt, ast.Assign) and stmt.target == "LED"
    expr = stmt.expr
    assert isinstance(expr, ast.Binary) and expr.op is ast.BinaryOp.AND
    assert isinstance(expr.right, ast.Unary) and expr.right.op is ast.UnaryOp.NOT


def test_missing_expression_diagnostic():
    program, diagnostics = parse_with_errors(
        "PROGRAM p VAR x : BOOL; END_VAR x := ; END_PROGRAM")
    assert program is None
    assert any(d.code == "E-PARSE-EXPR" for d in diagnostics)


def test_empty_input_is_parse_eof():
    program, diagnostics = parse_with_errors("")
    assert program is None
    assert [d.code for d in diagnostics] == ["E-PARSE-EOF"]


def test_function_with_return_type():
    program = parse_source(
        "FUNCTION f : INT VAR_INPUT a : INT; END_VAR f := a; END_FUNCTION")
    assert program.kind is ast.PouKind.FUNCTION
    assert program.return_type is ast.ElemType.INT


def test_subrange_and_init():
    program = parse_source(
        "PROGRAM p VAR x : INT (0..100) := 5; y : DINT := -3; END_VAR END_PROGRAM")
    x, y = program.locals
    assert x.range == (0, 100) and x.init.value == 5
    assert y.range is None and y.init.value == -3


def test_multi_name_declaration():
    program = parse_source("PROGRAM p VAR a, b, c : BOOL; END_VAR END_PROGRAM")
    assert [d.name for d in program.locals] == ["a", "b", "c"]
    assert all(d.ty is ast.ElemType.BOOL for d in program.locals)


def test_if_elsif_else():
    program = parse_source("""
        PROGRAM p VAR a : BOOL; x : INT; END_VAR
        IF a THEN x := 1;
        ELSIF NOT a THEN x := 2;
        ELSE x := 3;
        END_IF;
        END_PROGRAM""")
    stmt = program.body[0]
    assert isinstance(stmt, ast.If)
    assert len(stmt.elifs) == 1 and len(stmt.else_body) == 1


def test_case_with_ranges_and_lists():
    program = parse_source("""
        PROGRAM p VAR n : INT; x : INT; END_VAR
        CASE n OF
        0: x := 0;
        1, 2: x := 1;
        3..5: x := 2;
        -2..-1: x := 3;
        ELSE x := 9;
        END_CASE;
        END_PROGRAM""")
    stmt = program.body[0]
    assert isinstance(stmt, ast.Case)
    assert [arm.labels for arm in stmt.arms] == [
        [0], [1, 2], [(3, 5)], [(-2, -1)]]
    assert len(stmt.else_body) == 1


def test_loops():
    program = parse_source("""
        PROGRAM p VAR i : INT; x : INT; END_VAR
        FOR i := 1 TO 10 BY 2 DO x := i; END_FOR;
        WHILE x > 0 DO x := x - 1; END_WHILE;
        REPEAT x := x + 1; UNTIL x >= 3 END_REPEAT;
        END_PROGRAM""")
    for_stmt, while_stmt, repeat_stmt = program.body
    assert isinstance(for_stmt, ast.For) and for_stmt.step is not None
    assert isinstance(while_stmt, ast.While)
    assert isinstance(repeat_stmt, ast.Repeat)


def test_assert_statement():
    program = parse_source(
        "PROGRAM p VAR a : BOOL; END_VAR ASSERT(a); END_PROGRAM")
    assert isinstance(program.body[0], ast.Assert)


def test_operator_precedence():
    program = parse_source(
        "PROGRAM p VAR a, b, c : BOOL; x, y : INT; END_VAR "
        "a := b OR c AND a; x := 1 + 2 * 3; END_PROGRAM")
    or_expr = program.body[0].expr
    assert or_expr.op is ast.BinaryOp.OR
    assert or_expr.right.op is ast.BinaryOp.AND
    add_expr = program.body[1].expr
    assert add_expr.op is ast.BinaryOp.ADD
    assert add_expr.right.op is ast.BinaryOp.MUL


def test_comparison_binds_tighter_than_and():
    program = parse_source(
        "PROGRAM p VAR a : BOOL; x : INT; END_VAR a := x > 1 AND a; END_PROGRAM")
    expr = program.body[0].expr
    assert expr.op is ast.BinaryOp.AND
    assert expr.left.op is ast.BinaryOp.GT


def test_error_recovery_collects_multiple_diagnostics():
    _, diagnostics = parse_with_errors(
        "PROGRAM p VAR x : INT; END_VAR x := ; x := ; x := 1; END_PROGRAM")
    assert sum(1 for d in diagnostics if d.code == "E-PARSE-EXPR") == 2


def test_diagnostic_cap_at_twenty():
    source = ("PROGRAM p VAR x : INT; END_VAR "
              + "x := ; " * 40 + "END_PROGRAM")
    _, diagnostics = parse_with_errors(source)
    assert len(diagnostics) <= 20


def test_expected_token_hints():
    _, diagnostics = parse_with_errors("PROGRAM p VAR x BOOL; END_VAR END_PROGRAM")
    assert any(d.hint and "':'" in d.hint for d in diagnostics)


def test_trailing_tokens_rejected():
    _, diagnostics = parse_with_errors("PROGRAM p END_PROGRAM PROGRAM q END_PROGRAM")
    assert any(d.code == "E-PARSE-TOKEN" for d in diagnostics)


@pytest.mark.parametrize("source", [
    "VAR x : BOOL; END_VAR",
    "42",
    "xyz",
])
def test_not_a_unit(source):
    program, diagnostics = parse_with_errors(source)
    assert program is None
    assert diagnostics
