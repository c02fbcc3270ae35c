"""Property-generation agent: derive formal specifications when the task
does not provide any."""

from __future__ import annotations

from typing import Optional

from ..frontend import ast, parse_expression, typecheck_expression
from ..frontend.diagnostics import Diagnostic, SourceSpan, warning
from ..smv.model import Property, PropertyKind
from .backends import GenerationParams, LlmBackend
from .common import (CallBudget, NoPropertiesError, first_json_block,
                     parse_with_retries)
from .prompts import PromptLibrary, default_library, properties_messages


def _parse_raw(response: str) -> list[dict]:
    data = first_json_block(response)
    if not isinstance(data, list) or not data:
        raise ValueError("expected a non-empty JSON array of properties")
    for i, item in enumerate(data):
        if not isinstance(item, dict) or "id" not in item or "expr" not in item:
            raise ValueError(f"property {i} needs 'id' and 'expr' fields")
        if item.get("kind", "invariant") not in ("invariant", "assertion"):
            raise ValueError(f"property {i} has unknown kind {item.get('kind')!r}")
    return data


def generate_properties(backend: LlmBackend, task,
                        params: GenerationParams = GenerationParams(),
                        library: Optional[PromptLibrary] = None,
                        budget: Optional[CallBudget] = None,
                        ) -> tuple[list[Property], list[Diagnostic]]:
    """Generate properties for a task without user-provided ones.

    Expressions that fail to parse or to type-check as BOOL against the
    task's interface are dropped with a Warning; an empty survivor list
    raises NoPropertiesError.
    """
    library = library or default_library()
    messages = properties_messages(library, task)
    raw = parse_with_retries(backend, messages, params, _parse_raw, budget)

    decls = task.interface.all_decls()
    survivors: list[Property] = []
    dropped: list[Diagnostic] = []
    for item in raw:
        expr, diags = parse_expression(item["expr"])
        if expr is None:
            dropped.append(warning(
                "W-PROP-DROPPED",
                f"property {item['id']!r}: unparseable expression "
                f"{item['expr']!r}", _span(), hint=diags[0].message if diags else None))
            continue
        ty, type_diags = typecheck_expression(expr, decls)
        if ty is not ast.ElemType.BOOL:
            reason = type_diags[0].message if type_diags else \
                f"expression has type {ty.value if ty else '?'}, expected BOOL"
            dropped.append(warning(
                "W-PROP-DROPPED",
                f"property {item['id']!r} dropped: {reason}", _span()))
            continue
        survivors.append(Property(
            id=item["id"],
            kind=PropertyKind(item.get("kind", "invariant")),
            expr=expr,
            expr_text=item["expr"],
            description=item.get("description", ""),
            trivial=bool(item.get("trivial", False)),
        ))
    if not survivors:
        raise NoPropertiesError("every generated property was dropped")
    return survivors, dropped


def _span() -> SourceSpan:
    return SourceSpan("<generated-properties>", 1, 1, 0)
