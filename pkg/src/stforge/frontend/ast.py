"""AST for the Structured Text subset.

Node equality is structural: source spans and inferred types are excluded
from comparison so a pretty-printed and reparsed tree compares equal to the
original.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Union

from .diagnostics import SourceSpan


class ElemType(Enum):
    BOOL = "BOOL"
    INT = "INT"      # 16-bit signed
    DINT = "DINT"    # 32-bit signed
    REAL = "REAL"    # IEEE binary64
    TIME = "TIME"    # integer milliseconds

    @property
    def is_integer(self) -> bool:
        return self in (ElemType.INT, ElemType.DINT)

    @property
    def is_numeric(self) -> bool:
        return self in (ElemType.INT, ElemType.DINT, ElemType.REAL)


INT_WIDTH_BOUNDS = {
    ElemType.INT: (-(2 ** 15), 2 ** 15 - 1),
    ElemType.DINT: (-(2 ** 31), 2 ** 31 - 1),
}


class PouKind(Enum):
    PROGRAM = "PROGRAM"
    FUNCTION_BLOCK = "FUNCTION_BLOCK"
    FUNCTION = "FUNCTION"


class UnaryOp(Enum):
    NOT = "NOT"
    NEG = "-"


class BinaryOp(Enum):
    OR = "OR"
    XOR = "XOR"
    AND = "AND"
    EQ = "="
    NE = "<>"
    LT = "<"
    LE = "<="
    GT = ">"
    GE = ">="
    ADD = "+"
    SUB = "-"
    MUL = "*"
    DIV = "/"
    MOD = "MOD"


COMPARISON_OPS = frozenset({BinaryOp.EQ, BinaryOp.NE, BinaryOp.LT,
                            BinaryOp.LE, BinaryOp.GT, BinaryOp.GE})
LOGIC_OPS = frozenset({BinaryOp.AND, BinaryOp.OR, BinaryOp.XOR})
ARITH_OPS = frozenset({BinaryOp.ADD, BinaryOp.SUB, BinaryOp.MUL,
                       BinaryOp.DIV, BinaryOp.MOD})


@dataclass
class Expression:
    span: SourceSpan = field(compare=False, repr=False)
    # Filled in by semantic analysis.
    ty: Optional[ElemType] = field(default=None, compare=False, repr=False, init=False)


@dataclass
class Const(Expression):
    # bool for BOOL, int for INT/DINT, float for REAL, int ms for TIME.
    value: Union[bool, int, float] = False
    is_time: bool = False


@dataclass
class VarRef(Expression):
    name: str = ""


@dataclass
class Unary(Expression):
    op: UnaryOp = UnaryOp.NOT
    operand: Expression = None  # type: ignore[assignment]


@dataclass
class Binary(Expression):
    op: BinaryOp = BinaryOp.AND
    left: Expression = None  # type: ignore[assignment]
    right: Expression = None  # type: ignore[assignment]


@dataclass
class Statement:
    span: SourceSpan = field(compare=False, repr=False)


@dataclass
class Assign(Statement):
    target: str = ""
    expr: Expression = None  # type: ignore[assignment]


@dataclass
class If(Statement):
    cond: Expression = None  # type: ignore[assignment]
    then_body: list[Statement] = field(default_factory=list)
    elifs: list[tuple[Expression, list[Statement]]] = field(default_factory=list)
    else_body: list[Statement] = field(default_factory=list)


@dataclass
class CaseArm:
    # Each label is a single value or an inclusive (lo, hi) range.
    labels: list[Union[int, tuple[int, int]]]
    body: list[Statement]


@dataclass
class Case(Statement):
    selector: Expression = None  # type: ignore[assignment]
    arms: list[CaseArm] = field(default_factory=list)
    else_body: list[Statement] = field(default_factory=list)


@dataclass
class For(Statement):
    var: str = ""
    start: Expression = None  # type: ignore[assignment]
    stop: Expression = None  # type: ignore[assignment]
    step: Optional[Expression] = None
    body: list[Statement] = field(default_factory=list)


@dataclass
class While(Statement):
    cond: Expression = None  # type: ignore[assignment]
    body: list[Statement] = field(default_factory=list)


@dataclass
class Repeat(Statement):
    body: list[Statement] = field(default_factory=list)
    until: Expression = None  # type: ignore[assignment]


@dataclass
class Assert(Statement):
    expr: Expression = None  # type: ignore[assignment]


@dataclass
class Empty(Statement):
    pass


@dataclass
class VarDecl:
    name: str
    ty: ElemType
    span: SourceSpan = field(compare=False, repr=False)
    init: Optional[Const] = None
    # Verification subrange annotation, integers only.
    range: Optional[tuple[int, int]] = None


class Section(Enum):
    INPUT = "VAR_INPUT"
    OUTPUT = "VAR_OUTPUT"
    LOCAL = "VAR"


@dataclass
class Program:
    kind: PouKind
    name: str
    inputs: list[VarDecl]
    outputs: list[VarDecl]
    locals: list[VarDecl]
    body: list[Statement]
    span: SourceSpan = field(compare=False, repr=False)
    return_type: Optional[ElemType] = None

    def all_decls(self) -> list[VarDecl]:
        return [*self.inputs, *self.outputs, *self.locals]
