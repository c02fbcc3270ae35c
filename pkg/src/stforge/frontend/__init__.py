"""Structured Text frontend: lexing, parsing, semantic analysis."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import ast
from .analyzer import CheckedProgram, analyze
from .diagnostics import (Diagnostic, Severity, SourceSpan,
                          diagnostics_to_json_lines, has_errors,
                          render_diagnostics)
from .lexer import tokenize
from .parser import parse
from .printer import format_expression, pretty_print
from .tokens import Token, TokenKind

__all__ = [
    "ast", "tokenize", "parse", "analyze", "compile_check", "pretty_print",
    "format_expression", "parse_expression", "typecheck_expression",
    "CheckedProgram", "CompileReport", "Diagnostic", "Severity", "SourceSpan",
    "Token", "TokenKind", "has_errors", "render_diagnostics",
    "diagnostics_to_json_lines",
]


@dataclass
class CompileReport:
    ok: bool
    diagnostics: list[Diagnostic] = field(default_factory=list)
    program: CheckedProgram | None = None


def compile_check(source: str, filename: str = "<input>") -> CompileReport:
    """Run the full frontend; ok iff no phase produced an Error diagnostic."""
    tokens, diagnostics = tokenize(source, filename)
    if has_errors(diagnostics):
        return CompileReport(ok=False, diagnostics=diagnostics)
    program, parse_diags = parse(tokens, filename)
    diagnostics = diagnostics + parse_diags
    if program is None or has_errors(diagnostics):
        return CompileReport(ok=False, diagnostics=diagnostics)
    checked, sem_diags = analyze(program)
    diagnostics = diagnostics + sem_diags
    if checked is None or has_errors(diagnostics):
        return CompileReport(ok=False, diagnostics=diagnostics)
    return CompileReport(ok=True, diagnostics=diagnostics, program=checked)


def parse_expression(source: str,
                     filename: str = "<expr>") -> tuple[ast.Expression | None,
                                                        list[Diagnostic]]:
    """Parse a standalone ST expression (used for property files)."""
    from .diagnostics import error
    from .parser import _Parser, _ParseAbort, _SyncError

    tokens, diagnostics = tokenize(source, filename)
    if has_errors(diagnostics):
        return None, diagnostics
    parser = _Parser(tokens, filename)
    try:
        expr = parser.parse_expression()
        if not parser.at_end():
            tok = parser.peek()
            parser.report("E-PARSE-TOKEN",
                          f"unexpected {tok.describe()} after expression",
                          tok.span)
    except (_ParseAbort, _SyncError):
        expr = None
    if has_errors(parser.diagnostics):
        return None, parser.diagnostics
    return expr, parser.diagnostics


def typecheck_expression(expr: ast.Expression, decls: list[ast.VarDecl],
                         ) -> tuple[ast.ElemType | None, list[Diagnostic]]:
    """Type an expression against a set of declarations (case-insensitive)."""
    from .analyzer import _Analysis, _type_of

    scope = CheckedProgram(
        program=None,  # type: ignore[arg-type]  # only symbols are consulted
        symbols={d.name.lower(): d for d in decls},
        sections={d.name.lower(): ast.Section.LOCAL for d in decls},
    )
    an = _Analysis(scope)
    ty = _type_of(an, expr)
    if has_errors(an.diagnostics):
        return None, an.diagnostics
    return ty, an.diagnostics
