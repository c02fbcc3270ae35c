"""Benchmark corpus: task schema, loading, manifest validation.

A corpus directory holds ``manifest.json`` plus one JSON document per task.
Loading validates every field, type-checks each property expression against
the task interface, compiles reference code, checks trivial flags against
the assertion-sentence rule, and compares corpus-level counts with the
manifest.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Optional, Union

from ..frontend import ast, compile_check, format_expression, typecheck_expression
from ..frontend.diagnostics import SourceSpan
from ..smv.model import Property, PropertyKind

logger = logging.getLogger(__name__)

_DUMMY_SPAN = SourceSpan("<interface>", 1, 1, 0)

_TYPES = {t.value: t for t in ast.ElemType}
_KINDS = {"program": ast.PouKind.PROGRAM,
          "function_block": ast.PouKind.FUNCTION_BLOCK,
          "function": ast.PouKind.FUNCTION}


class Difficulty(Enum):
    EASY = "easy"
    MEDIUM = "medium"


class CorpusError(Exception):
    def __init__(self, source: str, message: str) -> None:
        super().__init__(f"{source}: {message}")
        self.source = source


@dataclass
class TaskInterface:
    kind: ast.PouKind
    name: str
    inputs: list[ast.VarDecl] = field(default_factory=list)
    outputs: list[ast.VarDecl] = field(default_factory=list)
    locals: list[ast.VarDecl] = field(default_factory=list)

    def all_decls(self) -> list[ast.VarDecl]:
        return [*self.inputs, *self.outputs, *self.locals]


@dataclass
class Task:
    id: str
    difficulty: Difficulty
    category: str
    instruction: str
    interface: TaskInterface
    properties: list[Property]
    skeleton: Optional[str] = None
    reference_code: Optional[str] = None

    @property
    def nontrivial_properties(self) -> list[Property]:
        return [p for p in self.properties if not p.trivial]


def _parse_decl(source: str, raw: dict, index: int, section: str) -> ast.VarDecl:
    where = f"interface.{section}[{index}]"
    name = raw.get("name")
    if not isinstance(name, str) or not name:
        raise CorpusError(source, f"{where}: missing 'name'")
    ty_name = raw.get("type")
    if ty_name not in _TYPES:
        raise CorpusError(source, f"{where}: unknown type {ty_name!r}")
    rng = raw.get("range")
    if rng is not None:
        if (not isinstance(rng, list) or len(rng) != 2
                or not all(isinstance(b, int) for b in rng)):
            raise CorpusError(source, f"{where}: 'range' must be [lo, hi]")
        rng = (rng[0], rng[1])
    return ast.VarDecl(name=name, ty=_TYPES[ty_name], span=_DUMMY_SPAN, range=rng)


def _parse_interface(source: str, raw) -> TaskInterface:
    if not isinstance(raw, dict):
        raise CorpusError(source, "'interface' must be an object")
    kind = raw.get("kind")
    if kind not in _KINDS:
        raise CorpusError(source, f"interface.kind: unknown POU kind {kind!r}")
    name = raw.get("name")
    if not isinstance(name, str) or not name:
        raise CorpusError(source, "interface.name: missing")
    interface = TaskInterface(kind=_KINDS[kind], name=name)
    for section in ("inputs", "outputs", "locals"):
        for i, decl in enumerate(raw.get(section, [])):
            getattr(interface, section).append(
                _parse_decl(source, decl, i, section))
    seen: set[str] = set()
    for decl in interface.all_decls():
        key = decl.name.lower()
        if key in seen:
            raise CorpusError(source, f"interface: duplicate variable "
                                      f"'{decl.name}' (case-insensitive)")
        seen.add(key)
    return interface


def _parse_property(source: str, raw: dict, index: int,
                    interface: TaskInterface) -> Property:
    where = f"properties[{index}]"
    for required in ("id", "expr"):
        if not isinstance(raw.get(required), str) or not raw[required]:
            raise CorpusError(source, f"{where}: missing '{required}'")
    try:
        prop = Property.from_json(raw)
    except ValueError as exc:
        raise CorpusError(source, f"{where}: {exc}") from exc
    ty, diags = typecheck_expression(prop.expr, interface.all_decls())
    if ty is not ast.ElemType.BOOL:
        detail = diags[0].message if diags else f"type {ty.value if ty else '?'}"
        raise CorpusError(source, f"{where}: expression does not type-check "
                                  f"as BOOL against the interface ({detail})")
    return prop


def _assertion_texts(reference_code: str) -> set[str]:
    report = compile_check(reference_code)
    if report.program is None:
        return set()
    texts: set[str] = set()

    def walk(stmts):
        for stmt in stmts:
            if isinstance(stmt, ast.Assert):
                texts.add(format_expression(stmt.expr).lower())
            elif isinstance(stmt, ast.If):
                walk(stmt.then_body)
                for _, b in stmt.elifs:
                    walk(b)
                walk(stmt.else_body)
            elif isinstance(stmt, ast.Case):
                for arm in stmt.arms:
                    walk(arm.body)
                walk(stmt.else_body)
            elif isinstance(stmt, (ast.For, ast.While, ast.Repeat)):
                walk(stmt.body)

    walk(report.program.program.body)
    return texts


def parse_task(source: str, raw: dict) -> Task:
    if not isinstance(raw, dict):
        raise CorpusError(source, "task document must be a JSON object")
    for required in ("id", "difficulty", "instruction", "interface", "properties"):
        if required not in raw:
            raise CorpusError(source, f"missing field '{required}'")
    try:
        difficulty = Difficulty(raw["difficulty"])
    except ValueError:
        raise CorpusError(source, f"difficulty: expected 'easy' or 'medium', "
                                  f"got {raw['difficulty']!r}") from None
    interface = _parse_interface(source, raw["interface"])
    if not isinstance(raw["properties"], list) or not raw["properties"]:
        raise CorpusError(source, "'properties' must be a non-empty array")
    properties = [_parse_property(source, p, i, interface)
                  for i, p in enumerate(raw["properties"])]
    ids = [p.id for p in properties]
    if len(set(ids)) != len(ids):
        raise CorpusError(source, "duplicate property ids")

    reference_code = raw.get("reference_code")
    if reference_code is not None:
        report = compile_check(reference_code, filename=source)
        if not report.ok:
            first = next(d for d in report.diagnostics)
            raise CorpusError(source, f"reference_code does not compile: "
                                      f"{first.render()}")
        # Trivial flag rule: an assertion property is trivial exactly when the
        # reference code has no matching assertion sentence.
        asserted = _assertion_texts(reference_code)
        for prop in properties:
            if prop.kind is PropertyKind.INVARIANT and prop.trivial:
                raise CorpusError(source, f"property {prop.id!r}: invariants "
                                          f"are never trivial")
            if prop.kind is PropertyKind.ASSERTION:
                has_site = format_expression(prop.expr).lower() in asserted
                if prop.trivial == has_site:
                    raise CorpusError(
                        source, f"property {prop.id!r}: trivial flag {prop.trivial} "
                                f"inconsistent with assertion sentences in the "
                                f"reference code")
    return Task(
        id=raw["id"], difficulty=difficulty,
        category=raw.get("category", ""),
        instruction=raw["instruction"], interface=interface,
        properties=properties, skeleton=raw.get("skeleton"),
        reference_code=reference_code)


def _check_counts(source: str, manifest: dict, tasks: list[Task]) -> None:
    declared = manifest.get("counts")
    if not isinstance(declared, dict):
        raise CorpusError(source, "manifest is missing 'counts'")
    for difficulty in Difficulty:
        expected = declared.get(difficulty.value)
        if not isinstance(expected, dict):
            raise CorpusError(source, f"counts.{difficulty.value}: missing")
        subset = [t for t in tasks if t.difficulty is difficulty]
        actual = {
            "tasks": len(subset),
            "properties": sum(len(t.properties) for t in subset),
            "nontrivial": sum(len(t.nontrivial_properties) for t in subset),
        }
        for key, value in actual.items():
            if expected.get(key) != value:
                raise CorpusError(
                    source, f"counts.{difficulty.value}.{key}: manifest says "
                            f"{expected.get(key)}, corpus has {value}")


def load_corpus(path: Union[str, Path]) -> list[Task]:
    """Load and validate a corpus directory; empty directory loads as []."""
    base = Path(path)
    manifest_path = base / "manifest.json"
    if not manifest_path.exists():
        if not base.exists() or not any(base.iterdir()):
            logger.warning("corpus directory %s is empty", base)
            return []
        raise CorpusError(str(manifest_path), "manifest.json not found")
    try:
        manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise CorpusError(str(manifest_path), f"invalid JSON: {exc}") from exc
    files = manifest.get("tasks")
    if not isinstance(files, list):
        raise CorpusError(str(manifest_path), "'tasks' must be a list of files")
    tasks: list[Task] = []
    seen_ids: set[str] = set()
    for name in files:
        task_path = base / name
        if not task_path.exists():
            raise CorpusError(str(task_path), "listed in manifest but missing")
        try:
            raw = json.loads(task_path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise CorpusError(str(task_path), f"invalid JSON: {exc}") from exc
        task = parse_task(str(task_path), raw)
        if task.id in seen_ids:
            raise CorpusError(str(task_path), f"duplicate task id {task.id!r}")
        seen_ids.add(task.id)
        tasks.append(task)
    _check_counts(str(manifest_path), manifest, tasks)
    return tasks


def default_corpus_path() -> Path:
    """The corpus shipped inside the package."""
    return Path(str(resources.files("stforge.bench").joinpath("corpus_data")))
