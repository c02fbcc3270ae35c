"""Token stream definitions for the Structured Text lexer."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Union

from .diagnostics import SourceSpan


class TokenKind(Enum):
    IDENT = "identifier"
    KEYWORD = "keyword"
    INT_LIT = "integer literal"
    REAL_LIT = "real literal"
    TIME_LIT = "time literal"
    STRING_LIT = "string literal"
    ASSIGN = "':='"
    SEMI = "';'"
    COLON = "':'"
    COMMA = "','"
    LPAREN = "'('"
    RPAREN = "')'"
    DOTDOT = "'..'"
    PLUS = "'+'"
    MINUS = "'-'"
    STAR = "'*'"
    SLASH = "'/'"
    EQ = "'='"
    NE = "'<>'"
    LT = "'<'"
    LE = "'<='"
    GT = "'>'"
    GE = "'>='"


KEYWORDS = frozenset({
    "PROGRAM", "END_PROGRAM",
    "FUNCTION_BLOCK", "END_FUNCTION_BLOCK",
    "FUNCTION", "END_FUNCTION",
    "VAR_INPUT", "VAR_OUTPUT", "VAR", "END_VAR",
    "IF", "THEN", "ELSIF", "ELSE", "END_IF",
    "CASE", "OF", "END_CASE",
    "FOR", "TO", "BY", "DO", "END_FOR",
    "WHILE", "END_WHILE",
    "REPEAT", "UNTIL", "END_REPEAT",
    "AND", "OR", "XOR", "NOT", "MOD",
    "ASSERT",
    "TRUE", "FALSE",
    "BOOL", "INT", "DINT", "REAL", "TIME",
})


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    span: SourceSpan
    # Decoded payload: int for INT_LIT, float for REAL_LIT, int milliseconds
    # for TIME_LIT, unquoted text for STRING_LIT, uppercased name for KEYWORD.
    value: Union[int, float, str, None] = field(default=None)

    def is_kw(self, name: str) -> bool:
        return self.kind is TokenKind.KEYWORD and self.value == name

    def describe(self) -> str:
        if self.kind in (TokenKind.IDENT, TokenKind.KEYWORD):
            return f"'{self.text}'"
        if self.kind in (TokenKind.INT_LIT, TokenKind.REAL_LIT,
                         TokenKind.TIME_LIT, TokenKind.STRING_LIT):
            return f"{self.kind.value} '{self.text}'"
        return self.kind.value
