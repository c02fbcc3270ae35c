"""Render an SmvModel as nuXmv batch input.

Output is byte-stable: variables are emitted in sorted order, INVARSPECs in
property order, each preceded by a ``-- property: <id>`` comment line.  The
property sidecar maps property ids to INVARSPEC indexes so external checker
output can be attributed back.
"""

from __future__ import annotations

import json

from .model import (SBinary, SCase, SConst, SInput, SmvExpr, SmvModel, SUnary,
                    SVar)

# nuXmv reserved words that could collide with emitted variable names.
_RESERVED = frozenset({
    "MODULE", "DEFINE", "MDEFINE", "CONSTANTS", "VAR", "IVAR", "FROZENVAR",
    "INIT", "TRANS", "INVAR", "SPEC", "CTLSPEC", "LTLSPEC", "PSLSPEC",
    "COMPUTE", "NAME", "INVARSPEC", "FAIRNESS", "JUSTICE", "COMPASSION",
    "ISA", "ASSIGN", "CONSTRAINT", "IN", "MIN", "MAX", "MIRROR", "PRED",
    "PREDICATES", "process", "array", "of", "boolean", "integer", "real",
    "word", "word1", "bool", "signed", "unsigned", "extend", "resize",
    "sizeof", "uwconst", "swconst", "EX", "AX", "EF", "AF", "EG", "AG",
    "E", "F", "O", "G", "H", "X", "Y", "Z", "A", "U", "S", "V", "T", "BU",
    "EBF", "ABF", "EBG", "ABG", "case", "esac", "mod", "next", "init",
    "union", "in", "xor", "xnor", "self", "TRUE", "FALSE", "count", "abs",
    "max", "min",
})


def emitted_names(model: SmvModel) -> dict[str, str]:
    """Deterministic model-name -> SMV-name map (reserved words get a
    suffix)."""
    mapping: dict[str, str] = {}
    used: set[str] = set()
    for var in [*model.state_vars, *model.input_vars]:
        name = var.name
        emitted = name
        while emitted in _RESERVED or emitted in used:
            emitted += "_v"
        mapping[name] = emitted
        used.add(emitted)
    return mapping


def _const(value) -> str:
    if isinstance(value, bool):
        return "TRUE" if value else "FALSE"
    return str(value)


def _render(expr: SmvExpr, names: dict[str, str], top: bool = False) -> str:
    if isinstance(expr, SConst):
        return _const(expr.value)
    if isinstance(expr, (SVar, SInput)):
        return names[expr.name]
    if isinstance(expr, SUnary):
        return f"{expr.op}{_render(expr.operand, names)}"
    if isinstance(expr, SBinary):
        text = (f"{_render(expr.left, names)} {expr.op} "
                f"{_render(expr.right, names)}")
        return text if top else f"({text})"
    if isinstance(expr, SCase):
        branches = "".join(
            f" {_render(g, names, top=True)} : {_render(v, names, top=True)};"
            for g, v in expr.branches)
        return f"case{branches} esac"
    raise TypeError(f"unknown SMV expression {type(expr).__name__}")


def _domain(var) -> str:
    if var.domain is None:
        return "boolean"
    return f"{var.domain[0]}..{var.domain[1]}"


def emit_smv(model: SmvModel) -> str:
    names = emitted_names(model)
    lines = ["MODULE main"]
    if model.input_vars:
        lines.append("IVAR")
        for var in sorted(model.input_vars, key=lambda v: v.name):
            lines.append(f"  {names[var.name]} : {_domain(var)};")
    lines.append("VAR")
    state_sorted = sorted(model.state_vars, key=lambda v: v.name)
    for var in state_sorted:
        lines.append(f"  {names[var.name]} : {_domain(var)};")
    lines.append("ASSIGN")
    for var in state_sorted:
        if var.init is not None:
            lines.append(f"  init({names[var.name]}) := {_const(var.init)};")
    for var in state_sorted:
        rhs = _render(model.next[var.name], names, top=True)
        lines.append(f"  next({names[var.name]}) := {rhs};")
    for prop_id, spec in model.invarspecs:
        lines.append(f"-- property: {prop_id}")
        lines.append(f"INVARSPEC {_render(spec, names, top=True)};")
    return "\n".join(lines) + "\n"


def property_sidecar(model: SmvModel) -> str:
    """JSON sidecar: property id -> INVARSPEC index, plus the name map."""
    payload = {
        "module": model.name,
        "properties": [
            {"id": prop_id, "invarspec_index": index}
            for index, (prop_id, _) in enumerate(model.invarspecs)
        ],
        "emitted_names": emitted_names(model),
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"
