from __future__ import annotations

import pytest

from stforge.frontend import TokenKind, tokenize


def kinds(source):
    tokens, diagnostics = tokenize(source)
    assert not diagnostics
    return [t.kind for t in tokens]


def test_led_assignment_tokens():
    tokens, diagnostics = tokenize("LED := PB1 AND NOT PB2;")
    assert not diagnostics
    assert [(t.kind, t.text) for t in tokens] == [
        (TokenKind.IDENT, "LED"),
        (TokenKind.ASSIGN, ":="),
        (TokenKind.IDENT, "PB1"),
        (TokenKind.KEYWORD, "AND"),
        (TokenKind.KEYWORD, "NOT"),
        (TokenKind.IDENT, "PB2"),
        (TokenKind.SEMI, ";"),
    ]


def test_empty_input():
    assert tokenize("") == ([], [])


def test_unterminated_comment():
    tokens, diagnostics = tokenize("(* x")
    assert not tokens
    assert [d.code for d in diagnostics] == ["E-LEX-UNTERMINATED"]
    assert (diagnostics[0].span.line, diagnostics[0].span.column) == (1, 1)


def test_unterminated_string():
    _, diagnostics = tokenize("x := 'abc")
    assert any(d.code == "E-LEX-UNTERMINATED" for d in diagnostics)


def test_comments_and_whitespace_skipped():
    tokens, diagnostics = tokenize(
        "// line comment\n(* block\ncomment *) x := 1 ; ")
    assert not diagnostics
    assert [t.text for t in tokens] == ["x", ":=", "1", ";"]


def test_keywords_case_insensitive():
    tokens, _ = tokenize("if If IF iF")
    assert all(t.kind is TokenKind.KEYWORD and t.value == "IF" for t in tokens)


def test_tokens_cover_spans():
    source = "x := 12 + yy;"
    tokens, _ = tokenize(source)
    for token in tokens:
        start = token.span.column - 1
        assert source[start:start + token.span.length] == token.text


@pytest.mark.parametrize("literal, ms", [
    ("T#500ms", 500),
    ("T#2s", 2000),
    ("TIME#1m30s", 90_000),
    ("t#1h", 3_600_000),
    ("T#1d2h", 93_600_000),
])
def test_time_literals(literal, ms):
    tokens, diagnostics = tokenize(literal)
    assert not diagnostics
    assert tokens[0].kind is TokenKind.TIME_LIT
    assert tokens[0].value == ms


def test_time_literal_bad_unit():
    _, diagnostics = tokenize("T#3weeks")
    assert [d.code for d in diagnostics] == ["E-LEX-TIME"]


def test_real_vs_range_dots():
    tokens, _ = tokenize("1.5 1..5")
    assert [t.kind for t in tokens] == [
        TokenKind.REAL_LIT, TokenKind.INT_LIT, TokenKind.DOTDOT,
        TokenKind.INT_LIT]
    assert tokens[0].value == 1.5


def test_real_with_exponent():
    tokens, _ = tokenize("2.5e3")
    assert tokens[0].kind is TokenKind.REAL_LIT
    assert tokens[0].value == 2500.0


def test_illegal_character():
    _, diagnostics = tokenize("x := @;")
    assert any(d.code == "E-LEX-CHAR" for d in diagnostics)


def test_diagnostic_cap():
    _, diagnostics = tokenize("@" * 100)
    assert len(diagnostics) == 20


def test_determinism():
    source = "PROGRAM p VAR x : INT := 3; END_VAR x := x + 1; END_PROGRAM"
    assert tokenize(source) == tokenize(source)
