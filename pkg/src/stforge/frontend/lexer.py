"""Lexer for the Structured Text subset.

Keywords are case-insensitive.  Comments ``(* ... *)`` and ``// ...`` and
whitespace are skipped; every other character belongs to exactly one token.
"""

from __future__ import annotations

from .diagnostics import Diagnostic, SourceSpan, error
from .tokens import KEYWORDS, Token, TokenKind

MAX_DIAGNOSTICS = 20

_TIME_UNITS_MS = {"d": 86_400_000, "h": 3_600_000, "m": 60_000, "s": 1000, "ms": 1}

_PUNCT = {
    ":=": TokenKind.ASSIGN,
    "..": TokenKind.DOTDOT,
    "<=": TokenKind.LE,
    ">=": TokenKind.GE,
    "<>": TokenKind.NE,
    ";": TokenKind.SEMI,
    ":": TokenKind.COLON,
    ",": TokenKind.COMMA,
    "(": TokenKind.LPAREN,
    ")": TokenKind.RPAREN,
    "+": TokenKind.PLUS,
    "-": TokenKind.MINUS,
    "*": TokenKind.STAR,
    "/": TokenKind.SLASH,
    "=": TokenKind.EQ,
    "<": TokenKind.LT,
    ">": TokenKind.GT,
}


class _Scanner:
    def __init__(self, source: str, filename: str) -> None:
        self.src = source
        self.file = filename
        self.pos = 0
        self.line = 1
        self.col = 1
        self.tokens: list[Token] = []
        self.diagnostics: list[Diagnostic] = []

    def span_from(self, line: int, col: int, length: int) -> SourceSpan:
        return SourceSpan(self.file, line, col, length)

    def peek(self, offset: int = 0) -> str:
        i = self.pos + offset
        return self.src[i] if i < len(self.src) else ""

    def advance(self, n: int = 1) -> None:
        for _ in range(n):
            if self.pos >= len(self.src):
                return
            if self.src[self.pos] == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
            self.pos += 1

    def emit(self, kind: TokenKind, start: tuple[int, int, int], value=None) -> None:
        pos0, line0, col0 = start
        text = self.src[pos0:self.pos]
        self.tokens.append(Token(kind, text, self.span_from(line0, col0, len(text)), value))

    def report(self, code: str, message: str, span: SourceSpan, hint: str | None = None) -> bool:
        """Record an error; returns False once the per-phase cap is reached."""
        self.diagnostics.append(error(code, message, span, hint))
        return len(self.diagnostics) < MAX_DIAGNOSTICS

    def mark(self) -> tuple[int, int, int]:
        return self.pos, self.line, self.col


def tokenize(source: str, filename: str = "<input>") -> tuple[list[Token], list[Diagnostic]]:
    sc = _Scanner(source, filename)
    while sc.pos < len(sc.src):
        ch = sc.peek()
        if ch in " \t\r\n":
            sc.advance()
            continue
        if ch == "/" and sc.peek(1) == "/":
            while sc.pos < len(sc.src) and sc.peek() != "\n":
                sc.advance()
            continue
        if ch == "(" and sc.peek(1) == "*":
            start = sc.mark()
            sc.advance(2)
            closed = False
            while sc.pos < len(sc.src):
                if sc.peek() == "*" and sc.peek(1) == ")":
                    sc.advance(2)
                    closed = True
                    break
                sc.advance()
            if not closed:
                sc.report("E-LEX-UNTERMINATED", "unterminated comment",
                          sc.span_from(start[1], start[2], sc.pos - start[0]))
                break
            continue
        if ch == "'":
            start = sc.mark()
            sc.advance()
            closed = False
            while sc.pos < len(sc.src) and sc.peek() != "\n":
                if sc.peek() == "'":
                    sc.advance()
                    closed = True
                    break
                sc.advance()
            if not closed:
                if not sc.report("E-LEX-UNTERMINATED", "unterminated string literal",
                                 sc.span_from(start[1], start[2], sc.pos - start[0])):
                    break
                continue
            sc.emit(TokenKind.STRING_LIT, start, sc.src[start[0] + 1:sc.pos - 1])
            continue
        if ch.isdigit():
            if not _scan_number(sc):
                break
            continue
        if ch.isalpha():
            if not _scan_word(sc):
                break
            continue
        two = ch + sc.peek(1)
        if two in _PUNCT:
            start = sc.mark()
            sc.advance(2)
            sc.emit(_PUNCT[two], start)
            continue
        if ch in _PUNCT:
            start = sc.mark()
            sc.advance()
            sc.emit(_PUNCT[ch], start)
            continue
        span = sc.span_from(sc.line, sc.col, 1)
        sc.advance()
        if not sc.report("E-LEX-CHAR", f"illegal character {ch!r}", span):
            break
    return sc.tokens, sc.diagnostics


def _scan_number(sc: _Scanner) -> bool:
    start = sc.mark()
    while sc.peek().isdigit():
        sc.advance()
    # '..' must stay a range operator: only consume '.' when a digit follows.
    if sc.peek() == "." and sc.peek(1).isdigit():
        sc.advance()
        while sc.peek().isdigit():
            sc.advance()
        if sc.peek() in "eE":
            j = 1
            if sc.peek(1) in "+-":
                j = 2
            if sc.peek(j).isdigit():
                sc.advance(j)
                while sc.peek().isdigit():
                    sc.advance()
        sc.emit(TokenKind.REAL_LIT, start, float(sc.src[start[0]:sc.pos]))
        return True
    sc.emit(TokenKind.INT_LIT, start, int(sc.src[start[0]:sc.pos]))
    return True


def _scan_word(sc: _Scanner) -> bool:
    start = sc.mark()
    while sc.peek().isalnum() or sc.peek() == "_":
        sc.advance()
    word = sc.src[start[0]:sc.pos]
    upper = word.upper()
    if sc.peek() == "#" and upper in ("T", "TIME"):
        return _scan_time_literal(sc, start)
    if upper in KEYWORDS:
        sc.emit(TokenKind.KEYWORD, start, upper)
    else:
        sc.emit(TokenKind.IDENT, start, None)
    return True


def _scan_time_literal(sc: _Scanner, start: tuple[int, int, int]) -> bool:
    sc.advance()  # '#'
    total_ms = 0
    saw_component = False
    while sc.peek().isdigit():
        num = 0
        while sc.peek().isdigit():
            num = num * 10 + int(sc.peek())
            sc.advance()
        unit = ""
        while sc.peek().isalpha():
            unit += sc.peek().lower()
            sc.advance()
        if unit not in _TIME_UNITS_MS:
            span = sc.span_from(start[1], start[2], sc.pos - start[0])
            return sc.report("E-LEX-TIME", f"unknown time unit {unit!r}", span,
                             hint="expected d, h, m, s or ms")
        total_ms += num * _TIME_UNITS_MS[unit]
        saw_component = True
    if not saw_component:
        span = sc.span_from(start[1], start[2], sc.pos - start[0])
        return sc.report("E-LEX-TIME", "time literal needs at least one component", span,
                         hint="e.g. T#500ms")
    sc.emit(TokenKind.TIME_LIT, start, total_ms)
    return True
