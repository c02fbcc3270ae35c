"""Recursive-descent parser for single-POU Structured Text compilation units.

Expression parsing follows the IEC 61131-3 operator precedence table
(OR lowest, then XOR, AND, equality, relational, additive, multiplicative,
unary).  Error recovery synchronizes on ';' and END_* keywords and gives up
after 20 diagnostics.
"""

from __future__ import annotations

from . import ast
from .diagnostics import Diagnostic, SourceSpan, error, has_errors
from .lexer import MAX_DIAGNOSTICS
from .tokens import Token, TokenKind


class _SyncError(Exception):
    """Raised at a parse error so callers can recover at a sync point."""

_SYNC_KEYWORDS = frozenset({
    "END_PROGRAM", "END_FUNCTION_BLOCK", "END_FUNCTION", "END_VAR",
    "END_IF", "END_CASE", "END_FOR", "END_WHILE", "END_REPEAT",
    "ELSE", "ELSIF", "UNTIL", "VAR", "VAR_INPUT", "VAR_OUTPUT",
})

_TYPE_KEYWORDS = {
    "BOOL": ast.ElemType.BOOL,
    "INT": ast.ElemType.INT,
    "DINT": ast.ElemType.DINT,
    "REAL": ast.ElemType.REAL,
    "TIME": ast.ElemType.TIME,
}

_STMT_END_KEYWORDS = frozenset({
    "END_PROGRAM", "END_FUNCTION_BLOCK", "END_FUNCTION",
    "END_IF", "END_CASE", "END_FOR", "END_WHILE", "END_REPEAT",
    "ELSE", "ELSIF", "UNTIL",
})


class _ParseAbort(Exception):
    """Raised internally when the diagnostic cap is reached."""


class _Parser:
    def __init__(self, tokens: list[Token], filename: str) -> None:
        self.tokens = tokens
        self.file = filename
        self.pos = 0
        self.diagnostics: list[Diagnostic] = []

    # -- token access -------------------------------------------------

    def at_end(self) -> bool:
        return self.pos >= len(self.tokens)

    def peek(self, offset: int = 0) -> Token | None:
        i = self.pos + offset
        return self.tokens[i] if i < len(self.tokens) else None

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def eof_span(self) -> SourceSpan:
        if self.tokens:
            last = self.tokens[-1].span
            return SourceSpan(self.file, last.line, last.column + last.length, 0)
        return SourceSpan(self.file, 1, 1, 0)

    def here_span(self) -> SourceSpan:
        tok = self.peek()
        return tok.span if tok else self.eof_span()

    def check(self, kind: TokenKind) -> bool:
        tok = self.peek()
        return tok is not None and tok.kind is kind

    def check_kw(self, name: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.is_kw(name)

    def match(self, kind: TokenKind) -> Token | None:
        if self.check(kind):
            return self.advance()
        return None

    def match_kw(self, name: str) -> Token | None:
        if self.check_kw(name):
            return self.advance()
        return None

    # -- errors --------------------------------------------------------

    def report(self, code: str, message: str, span: SourceSpan,
               hint: str | None = None) -> None:
        self.diagnostics.append(error(code, message, span, hint))
        if len(self.diagnostics) >= MAX_DIAGNOSTICS:
            raise _ParseAbort()

    def expect(self, kind: TokenKind, context: str) -> Token:
        tok = self.match(kind)
        if tok is not None:
            return tok
        got = self.peek()
        if got is None:
            self.report("E-PARSE-EOF", f"unexpected end of input in {context}",
                        self.eof_span(), hint=f"expected {kind.value}")
        else:
            self.report("E-PARSE-TOKEN", f"unexpected {got.describe()} in {context}",
                        got.span, hint=f"expected {kind.value}")
        raise _SyncError()

    def expect_kw(self, name: str, context: str) -> Token:
        tok = self.match_kw(name)
        if tok is not None:
            return tok
        got = self.peek()
        if got is None:
            self.report("E-PARSE-EOF", f"unexpected end of input in {context}",
                        self.eof_span(), hint=f"expected '{name}'")
        else:
            self.report("E-PARSE-TOKEN", f"unexpected {got.describe()} in {context}",
                        got.span, hint=f"expected '{name}'")
        raise _SyncError()

    def synchronize(self) -> None:
        """Skip to just after the next ';' or stop before a structural keyword."""
        while not self.at_end():
            tok = self.peek()
            if tok.kind is TokenKind.SEMI:
                self.advance()
                return
            if tok.kind is TokenKind.KEYWORD and tok.value in _SYNC_KEYWORDS:
                return
            self.advance()

    # -- grammar ---------------------------------------------------------

    def parse_unit(self) -> ast.Program | None:
        first = self.peek()
        if first is None:
            self.report("E-PARSE-EOF", "empty input: expected PROGRAM, "
                        "FUNCTION_BLOCK or FUNCTION", self.eof_span())
            return None
        kind_map = {
            "PROGRAM": (ast.PouKind.PROGRAM, "END_PROGRAM"),
            "FUNCTION_BLOCK": (ast.PouKind.FUNCTION_BLOCK, "END_FUNCTION_BLOCK"),
            "FUNCTION": (ast.PouKind.FUNCTION, "END_FUNCTION"),
        }
        if first.kind is not TokenKind.KEYWORD or first.value not in kind_map:
            self.report("E-PARSE-UNIT", f"expected PROGRAM, FUNCTION_BLOCK or "
                        f"FUNCTION, got {first.describe()}", first.span)
            return None
        self.advance()
        kind, end_kw = kind_map[first.value]
        try:
            name_tok = self.expect(TokenKind.IDENT, f"{first.value} header")
        except _SyncError:
            return None
        name = name_tok.text

        return_type: ast.ElemType | None = None
        if kind is ast.PouKind.FUNCTION:
            try:
                self.expect(TokenKind.COLON, "FUNCTION header")
                return_type = self.parse_type_name()
            except _SyncError:
                self.synchronize()

        inputs: list[ast.VarDecl] = []
        outputs: list[ast.VarDecl] = []
        locals_: list[ast.VarDecl] = []
        while True:
            if self.check_kw("VAR_INPUT"):
                inputs.extend(self.parse_var_block("VAR_INPUT"))
            elif self.check_kw("VAR_OUTPUT"):
                outputs.extend(self.parse_var_block("VAR_OUTPUT"))
            elif self.check_kw("VAR"):
                locals_.extend(self.parse_var_block("VAR"))
            else:
                break

        body = self.parse_statements()
        try:
            self.expect_kw(end_kw, f"{first.value} unit")
        except _SyncError:
            pass
        trailing = self.peek()
        if trailing is not None:
            self.report("E-PARSE-TOKEN",
                        f"unexpected {trailing.describe()} after {end_kw}",
                        trailing.span, hint="one compilation unit per file")
        return ast.Program(kind=kind, name=name, inputs=inputs, outputs=outputs,
                           locals=locals_, body=body, span=first.span,
                           return_type=return_type)

    def parse_type_name(self) -> ast.ElemType:
        tok = self.peek()
        if tok is not None and tok.kind is TokenKind.KEYWORD and tok.value in _TYPE_KEYWORDS:
            self.advance()
            return _TYPE_KEYWORDS[tok.value]
        if tok is None:
            self.report("E-PARSE-EOF", "expected a type name", self.eof_span(),
                        hint="one of BOOL, INT, DINT, REAL, TIME")
        else:
            self.report("E-PARSE-TYPE", f"expected a type name, got {tok.describe()}",
                        tok.span, hint="one of BOOL, INT, DINT, REAL, TIME")
        raise _SyncError()

    def parse_var_block(self, section_kw: str) -> list[ast.VarDecl]:
        self.advance()  # the section keyword
        decls: list[ast.VarDecl] = []
        while not self.at_end() and not self.check_kw("END_VAR"):
            try:
                decls.extend(self.parse_decl())
            except _SyncError:
                self.synchronize()
        try:
            self.expect_kw("END_VAR", f"{section_kw} block")
        except _SyncError:
            pass
        return decls

    def parse_decl(self) -> list[ast.VarDecl]:
        names: list[Token] = [self.expect(TokenKind.IDENT, "variable declaration")]
        while self.match(TokenKind.COMMA):
            names.append(self.expect(TokenKind.IDENT, "variable declaration"))
        self.expect(TokenKind.COLON, "variable declaration")
        ty = self.parse_type_name()
        rng: tuple[int, int] | None = None
        if self.check(TokenKind.LPAREN):
            rng = self.parse_subrange()
        init: ast.Const | None = None
        if self.match(TokenKind.ASSIGN):
            init = self.parse_literal("initializer")
        self.expect(TokenKind.SEMI, "variable declaration")
        return [ast.VarDecl(name=t.text, ty=ty, span=t.span, init=init, range=rng)
                for t in names]

    def parse_subrange(self) -> tuple[int, int]:
        self.advance()  # '('
        lo = self.parse_signed_int("subrange lower bound")
        self.expect(TokenKind.DOTDOT, "subrange")
        hi = self.parse_signed_int("subrange upper bound")
        self.expect(TokenKind.RPAREN, "subrange")
        return lo, hi

    def parse_signed_int(self, context: str) -> int:
        neg = self.match(TokenKind.MINUS) is not None
        tok = self.expect(TokenKind.INT_LIT, context)
        return -tok.value if neg else tok.value

    def parse_literal(self, context: str) -> ast.Const:
        neg_tok = self.match(TokenKind.MINUS)
        tok = self.peek()
        if tok is None:
            self.report("E-PARSE-EOF", f"expected a literal in {context}", self.eof_span())
            raise _SyncError()
        span = neg_tok.span if neg_tok else tok.span
        if tok.kind is TokenKind.INT_LIT:
            self.advance()
            return ast.Const(span=span, value=-tok.value if neg_tok else tok.value)
        if tok.kind is TokenKind.REAL_LIT:
            self.advance()
            return ast.Const(span=span, value=-tok.value if neg_tok else tok.value)
        if tok.kind is TokenKind.TIME_LIT and not neg_tok:
            self.advance()
            return ast.Const(span=span, value=tok.value, is_time=True)
        if tok.kind is TokenKind.KEYWORD and tok.value in ("TRUE", "FALSE") and not neg_tok:
            self.advance()
            return ast.Const(span=span, value=tok.value == "TRUE")
        self.report("E-PARSE-LIT", f"expected a literal in {context}, got {tok.describe()}",
                    tok.span)
        raise _SyncError()

    # -- statements ------------------------------------------------------

    def parse_statements(self) -> list[ast.Statement]:
        stmts: list[ast.Statement] = []
        while not self.at_end():
            tok = self.peek()
            if tok.kind is TokenKind.KEYWORD and tok.value in _STMT_END_KEYWORDS:
                break
            if self._at_case_label():
                break
            try:
                stmt = self.parse_statement()
            except _SyncError:
                self.synchronize()
                continue
            if stmt is not None:
                stmts.append(stmt)
        return stmts

    def parse_statement(self) -> ast.Statement | None:
        tok = self.peek()
        assert tok is not None
        if tok.kind is TokenKind.SEMI:
            self.advance()
            return ast.Empty(span=tok.span)
        if tok.kind is TokenKind.IDENT:
            return self.parse_assign()
        if tok.kind is TokenKind.KEYWORD:
            handler = {
                "IF": self.parse_if,
                "CASE": self.parse_case,
                "FOR": self.parse_for,
                "WHILE": self.parse_while,
                "REPEAT": self.parse_repeat,
                "ASSERT": self.parse_assert,
            }.get(tok.value)
            if handler is not None:
                return handler()
        self.report("E-PARSE-STMT", f"expected a statement, got {tok.describe()}",
                    tok.span, hint="statements start with an identifier, IF, CASE, "
                    "FOR, WHILE, REPEAT or ASSERT")
        raise _SyncError()

    def parse_assign(self) -> ast.Assign:
        target = self.advance()
        self.expect(TokenKind.ASSIGN, "assignment")
        expr = self.parse_expression()
        self.expect(TokenKind.SEMI, "assignment")
        return ast.Assign(span=target.span, target=target.text, expr=expr)

    def parse_if(self) -> ast.If:
        if_tok = self.advance()
        cond = self.parse_expression()
        self.expect_kw("THEN", "IF statement")
        then_body = self.parse_statements()
        elifs: list[tuple[ast.Expression, list[ast.Statement]]] = []
        else_body: list[ast.Statement] = []
        while self.check_kw("ELSIF"):
            self.advance()
            elif_cond = self.parse_expression()
            self.expect_kw("THEN", "ELSIF branch")
            elifs.append((elif_cond, self.parse_statements()))
        if self.match_kw("ELSE"):
            else_body = self.parse_statements()
        self.expect_kw("END_IF", "IF statement")
        self.match(TokenKind.SEMI)
        return ast.If(span=if_tok.span, cond=cond, then_body=then_body,
                      elifs=elifs, else_body=else_body)

    def _at_case_label(self) -> bool:
        """Lookahead: INT (.. INT)? (, ...)* ':' marks the start of a CASE arm."""
        i = 0
        saw_label = False
        while True:
            tok = self.peek(i)
            if tok is None:
                return False
            if tok.kind is TokenKind.MINUS:
                i += 1
                tok = self.peek(i)
                if tok is None or tok.kind is not TokenKind.INT_LIT:
                    return False
            if tok.kind is not TokenKind.INT_LIT:
                return False
            saw_label = True
            i += 1
            tok = self.peek(i)
            if tok is not None and tok.kind is TokenKind.DOTDOT:
                i += 1
                tok = self.peek(i)
                if tok is not None and tok.kind is TokenKind.MINUS:
                    i += 1
                    tok = self.peek(i)
                if tok is None or tok.kind is not TokenKind.INT_LIT:
                    return False
                i += 1
                tok = self.peek(i)
            if tok is None:
                return False
            if tok.kind is TokenKind.COLON:
                return saw_label
            if tok.kind is TokenKind.COMMA:
                i += 1
                continue
            return False

    def parse_case(self) -> ast.Case:
        case_tok = self.advance()
        selector = self.parse_expression()
        self.expect_kw("OF", "CASE statement")
        arms: list[ast.CaseArm] = []
        else_body: list[ast.Statement] = []
        while self._at_case_label():
            labels = self.parse_case_labels()
            self.expect(TokenKind.COLON, "CASE arm")
            body = self.parse_statements()
            arms.append(ast.CaseArm(labels=labels, body=body))
        if self.match_kw("ELSE"):
            else_body = self.parse_statements()
        self.expect_kw("END_CASE", "CASE statement")
        self.match(TokenKind.SEMI)
        return ast.Case(span=case_tok.span, selector=selector, arms=arms,
                        else_body=else_body)

    def parse_case_labels(self) -> list:
        labels: list = []
        while True:
            lo = self.parse_signed_int("CASE label")
            if self.match(TokenKind.DOTDOT):
                hi = self.parse_signed_int("CASE label range")
                labels.append((lo, hi))
            else:
                labels.append(lo)
            if not self.match(TokenKind.COMMA):
                return labels

    def parse_for(self) -> ast.For:
        for_tok = self.advance()
        var = self.expect(TokenKind.IDENT, "FOR statement")
        self.expect(TokenKind.ASSIGN, "FOR statement")
        start = self.parse_expression()
        self.expect_kw("TO", "FOR statement")
        stop = self.parse_expression()
        step = None
        if self.match_kw("BY"):
            step = self.parse_expression()
        self.expect_kw("DO", "FOR statement")
        body = self.parse_statements()
        self.expect_kw("END_FOR", "FOR statement")
        self.match(TokenKind.SEMI)
        return ast.For(span=for_tok.span, var=var.text, start=start, stop=stop,
                       step=step, body=body)

    def parse_while(self) -> ast.While:
        while_tok = self.advance()
        cond = self.parse_expression()
        self.expect_kw("DO", "WHILE statement")
        body = self.parse_statements()
        self.expect_kw("END_WHILE", "WHILE statement")
        self.match(TokenKind.SEMI)
        return ast.While(span=while_tok.span, cond=cond, body=body)

    def parse_repeat(self) -> ast.Repeat:
        repeat_tok = self.advance()
        body = self.parse_statements()
        self.expect_kw("UNTIL", "REPEAT statement")
        until = self.parse_expression()
        self.expect_kw("END_REPEAT", "REPEAT statement")
        self.match(TokenKind.SEMI)
        return ast.Repeat(span=repeat_tok.span, body=body, until=until)

    def parse_assert(self) -> ast.Assert:
        assert_tok = self.advance()
        self.expect(TokenKind.LPAREN, "ASSERT statement")
        expr = self.parse_expression()
        self.expect(TokenKind.RPAREN, "ASSERT statement")
        self.expect(TokenKind.SEMI, "ASSERT statement")
        return ast.Assert(span=assert_tok.span, expr=expr)

    # -- expressions ------------------------------------------------------

    def parse_expression(self) -> ast.Expression:
        return self.parse_or()

    def _parse_binary_level(self, sub, table: dict) -> ast.Expression:
        left = sub()
        while True:
            tok = self.peek()
            op = None
            if tok is not None:
                if tok.kind is TokenKind.KEYWORD:
                    op = table.get(tok.value)
                else:
                    op = table.get(tok.kind)
            if op is None:
                return left
            self.advance()
            right = sub()
            left = ast.Binary(span=tok.span, op=op, left=left, right=right)

    def parse_or(self) -> ast.Expression:
        return self._parse_binary_level(self.parse_xor, {"OR": ast.BinaryOp.OR})

    def parse_xor(self) -> ast.Expression:
        return self._parse_binary_level(self.parse_and, {"XOR": ast.BinaryOp.XOR})

    def parse_and(self) -> ast.Expression:
        return self._parse_binary_level(self.parse_equality, {"AND": ast.BinaryOp.AND})

    def parse_equality(self) -> ast.Expression:
        return self._parse_binary_level(self.parse_relational, {
            TokenKind.EQ: ast.BinaryOp.EQ, TokenKind.NE: ast.BinaryOp.NE})

    def parse_relational(self) -> ast.Expression:
        return self._parse_binary_level(self.parse_additive, {
            TokenKind.LT: ast.BinaryOp.LT, TokenKind.LE: ast.BinaryOp.LE,
            TokenKind.GT: ast.BinaryOp.GT, TokenKind.GE: ast.BinaryOp.GE})

    def parse_additive(self) -> ast.Expression:
        return self._parse_binary_level(self.parse_multiplicative, {
            TokenKind.PLUS: ast.BinaryOp.ADD, TokenKind.MINUS: ast.BinaryOp.SUB})

    def parse_multiplicative(self) -> ast.Expression:
        return self._parse_binary_level(self.parse_unary, {
            TokenKind.STAR: ast.BinaryOp.MUL, TokenKind.SLASH: ast.BinaryOp.DIV,
            "MOD": ast.BinaryOp.MOD})

    def parse_unary(self) -> ast.Expression:
        tok = self.peek()
        if tok is not None and tok.is_kw("NOT"):
            self.advance()
            return ast.Unary(span=tok.span, op=ast.UnaryOp.NOT, operand=self.parse_unary())
        if tok is not None and tok.kind is TokenKind.MINUS:
            self.advance()
            return ast.Unary(span=tok.span, op=ast.UnaryOp.NEG, operand=self.parse_unary())
        return self.parse_primary()

    def parse_primary(self) -> ast.Expression:
        tok = self.peek()
        if tok is None:
            self.report("E-PARSE-EXPR", "expected an expression", self.eof_span())
            raise _SyncError()
        if tok.kind is TokenKind.INT_LIT:
            self.advance()
            return ast.Const(span=tok.span, value=tok.value)
        if tok.kind is TokenKind.REAL_LIT:
            self.advance()
            return ast.Const(span=tok.span, value=tok.value)
        if tok.kind is TokenKind.TIME_LIT:
            self.advance()
            return ast.Const(span=tok.span, value=tok.value, is_time=True)
        if tok.kind is TokenKind.KEYWORD and tok.value in ("TRUE", "FALSE"):
            self.advance()
            return ast.Const(span=tok.span, value=tok.value == "TRUE")
        if tok.kind is TokenKind.IDENT:
            self.advance()
            return ast.VarRef(span=tok.span, name=tok.text)
        if tok.kind is TokenKind.LPAREN:
            self.advance()
            inner = self.parse_expression()
            self.expect(TokenKind.RPAREN, "parenthesized expression")
            return inner
        self.report("E-PARSE-EXPR", f"expected an expression, got {tok.describe()}",
                    tok.span)
        raise _SyncError()


def parse(tokens: list[Token],
          filename: str = "<input>") -> tuple[ast.Program | None, list[Diagnostic]]:
    parser = _Parser(tokens, filename)
    try:
        program = parser.parse_unit()
    except (_ParseAbort, _SyncError):
        program = None
    if has_errors(parser.diagnostics):
        return None, parser.diagnostics
    return program, parser.diagnostics
