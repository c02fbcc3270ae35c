"""Finite-state transition-system model emitted from a checked program.

``SmvExpr`` mirrors the expression language of SMV input files: variable
reads, constants, boolean/arithmetic operators and total ``case`` trees.
Expressions are immutable and share subtrees freely.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Union

from ..frontend import ast as st_ast
from ..frontend.diagnostics import Diagnostic


class PropertyKind(Enum):
    INVARIANT = "invariant"
    ASSERTION = "assertion"


@dataclass
class Property:
    """A boolean claim over program variables, checked on post-cycle states."""

    id: str
    kind: PropertyKind
    expr: st_ast.Expression
    expr_text: str
    description: str = ""
    trivial: bool = False

    @classmethod
    def from_json(cls, data: dict) -> "Property":
        from ..frontend import parse_expression

        expr, diags = parse_expression(data["expr"])
        if expr is None:
            raise ValueError(
                f"property {data.get('id', '?')!r}: cannot parse expression "
                f"{data['expr']!r}: {diags[0].message if diags else 'unknown'}")
        return cls(
            id=data["id"],
            kind=PropertyKind(data.get("kind", "invariant")),
            expr=expr,
            expr_text=data["expr"],
            description=data.get("description", ""),
            trivial=bool(data.get("trivial", False)),
        )

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "kind": self.kind.value,
            "expr": self.expr_text,
            "description": self.description,
            "trivial": self.trivial,
        }


# -- expressions ------------------------------------------------------------


class SmvExpr:
    __slots__ = ()


@dataclass(frozen=True)
class SConst(SmvExpr):
    value: Union[bool, int]


@dataclass(frozen=True)
class SVar(SmvExpr):
    """Read of a state variable's current value."""

    name: str


@dataclass(frozen=True)
class SInput(SmvExpr):
    """Read of this cycle's nondeterministic input."""

    name: str


@dataclass(frozen=True)
class SUnary(SmvExpr):
    op: str  # "!" or "-"
    operand: SmvExpr


@dataclass(frozen=True)
class SBinary(SmvExpr):
    op: str  # & | xor = != < <= > >= + - * / mod
    left: SmvExpr
    right: SmvExpr


@dataclass(frozen=True)
class SCase(SmvExpr):
    """First-match case tree; the final guard is always TRUE."""

    branches: tuple[tuple[SmvExpr, SmvExpr], ...]


TRUE = SConst(True)
FALSE = SConst(False)


def s_not(e: SmvExpr) -> SmvExpr:
    if isinstance(e, SConst):
        return SConst(not e.value)
    if isinstance(e, SUnary) and e.op == "!":
        return e.operand
    return SUnary("!", e)


def s_and(a: SmvExpr, b: SmvExpr) -> SmvExpr:
    if a == TRUE:
        return b
    if b == TRUE:
        return a
    if a == FALSE or b == FALSE:
        return FALSE
    return SBinary("&", a, b)


def s_or(a: SmvExpr, b: SmvExpr) -> SmvExpr:
    if a == FALSE:
        return b
    if b == FALSE:
        return a
    if a == TRUE or b == TRUE:
        return TRUE
    return SBinary("|", a, b)


def s_implies(a: SmvExpr, b: SmvExpr) -> SmvExpr:
    return s_or(s_not(a), b)


def s_case(branches: list[tuple[SmvExpr, SmvExpr]]) -> SmvExpr:
    """Build a total case tree, pruning dead branches and collapsing
    all-equal values."""
    pruned: list[tuple[SmvExpr, SmvExpr]] = []
    for guard, value in branches:
        if guard == FALSE:
            continue
        pruned.append((guard, value))
        if guard == TRUE:
            break
    if not pruned:
        raise ValueError("case tree has no reachable branch")
    if pruned[-1][0] != TRUE:
        raise ValueError("case tree must end with a TRUE guard")
    if all(value == pruned[0][1] for _, value in pruned):
        return pruned[0][1]
    if len(pruned) == 1:
        return pruned[0][1]
    return SCase(tuple(pruned))


def expr_size(expr: SmvExpr, seen: Optional[set] = None) -> int:
    """Node count with structure sharing (shared subtrees counted once)."""
    if seen is None:
        seen = set()
    if id(expr) in seen:
        return 0
    seen.add(id(expr))
    if isinstance(expr, (SConst, SVar, SInput)):
        return 1
    if isinstance(expr, SUnary):
        return 1 + expr_size(expr.operand, seen)
    if isinstance(expr, SBinary):
        return 1 + expr_size(expr.left, seen) + expr_size(expr.right, seen)
    if isinstance(expr, SCase):
        return 1 + sum(expr_size(g, seen) + expr_size(v, seen)
                       for g, v in expr.branches)
    raise TypeError(f"unknown SMV expression {type(expr).__name__}")


# -- model -------------------------------------------------------------------


Domain = Optional[tuple[int, int]]  # None means boolean


@dataclass(frozen=True)
class SmvVar:
    name: str
    domain: Domain
    init: Union[bool, int, None] = None  # None: unconstrained initial value

    @property
    def is_bool(self) -> bool:
        return self.domain is None

    def domain_values(self) -> list:
        if self.domain is None:
            return [False, True]
        return list(range(self.domain[0], self.domain[1] + 1))


@dataclass
class SmvModel:
    name: str
    state_vars: list[SmvVar]
    input_vars: list[SmvVar]
    next: dict[str, SmvExpr]
    invarspecs: list[tuple[str, SmvExpr]] = field(default_factory=list)
    # Projection metadata: program-visible state variables and the latch that
    # records each input's value for the cycle that produced a state.
    program_vars: list[str] = field(default_factory=list)
    latch_names: dict[str, str] = field(default_factory=dict)
    fault_var: Optional[str] = None

    def state_var(self, name: str) -> SmvVar:
        for var in self.state_vars:
            if var.name == name:
                return var
        raise KeyError(name)

    def state_space_size(self) -> int:
        size = 1
        for var in self.state_vars:
            size *= 2 if var.domain is None else var.domain[1] - var.domain[0] + 1
        return size

    def input_combination_count(self) -> int:
        count = 1
        for var in self.input_vars:
            count *= 2 if var.domain is None else var.domain[1] - var.domain[0] + 1
        return count


class TranslationError(Exception):
    """Raised when a verifiable-checked program still cannot be translated
    (unroll bound exceeded, case-tree blowup)."""

    def __init__(self, diagnostic: Diagnostic) -> None:
        super().__init__(diagnostic.render())
        self.diagnostic = diagnostic
