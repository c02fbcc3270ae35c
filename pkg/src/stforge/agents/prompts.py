"""Prompt assembly from versioned template assets.

Templates live as plain text files shipped with the package (or any
directory passed to PromptLibrary), one per named section.  Prompt profiles
toggle exactly the sections the generation quality depends on.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Optional, Union

from ..frontend import ast
from .backends import ChatMessage, Role
from .rag import Chunk

SECTION_NAMES = (
    "role", "constraints", "syntax_hint", "one_shot_example", "rag_context",
    "plan", "advice", "planner", "properties", "debug_syntactic",
    "debug_semantic", "repair",
)

# Which optional coder-prompt sections each profile enables.
PROFILES: dict[str, frozenset[str]] = {
    "zero_shot": frozenset(),
    "one_shot": frozenset({"one_shot_example"}),
    "one_shot+syntax_hint": frozenset({"one_shot_example", "syntax_hint"}),
    "one_shot+rag": frozenset({"one_shot_example", "rag_context"}),
    "full": frozenset({"one_shot_example", "syntax_hint", "rag_context"}),
}


@dataclass
class PromptLibrary:
    sections: dict[str, str]

    @classmethod
    def load(cls, directory: Optional[Union[str, Path]] = None) -> "PromptLibrary":
        if directory is not None:
            base = Path(directory)
            sections = {name: (base / f"{name}.txt").read_text(encoding="utf-8")
                        for name in SECTION_NAMES}
            return cls(sections)
        root = resources.files("stforge.agents").joinpath("templates")
        sections = {name: root.joinpath(f"{name}.txt").read_text(encoding="utf-8")
                    for name in SECTION_NAMES}
        return cls(sections)

    def section(self, name: str) -> str:
        return self.sections[name].strip()


_DEFAULT_LIBRARY: Optional[PromptLibrary] = None


def default_library() -> PromptLibrary:
    global _DEFAULT_LIBRARY
    if _DEFAULT_LIBRARY is None:
        _DEFAULT_LIBRARY = PromptLibrary.load()
    return _DEFAULT_LIBRARY


def _render_decl(decl: ast.VarDecl) -> str:
    text = f"{decl.name} : {decl.ty.value}"
    if decl.range is not None:
        text += f" ({decl.range[0]}..{decl.range[1]})"
    return text


def render_interface(task) -> str:
    interface = task.interface
    lines = [f"POU: {interface.kind.value} named {interface.name}"]
    for label, decls in (("inputs", interface.inputs),
                        ("outputs", interface.outputs),
                        ("locals", interface.locals)):
        if decls:
            lines.append(f"{label}: " + "; ".join(_render_decl(d) for d in decls))
    return "\n".join(lines)


def render_task(task) -> str:
    parts = [f"Task: {task.instruction}", render_interface(task)]
    if getattr(task, "skeleton", None):
        parts.append("Start from this skeleton:\n```st\n"
                     + task.skeleton.strip() + "\n```")
    return "\n\n".join(parts)


def render_chunks(library: PromptLibrary, chunks: list[Chunk]) -> str:
    header = library.section("rag_context")
    body = "\n".join(f"[{c.doc_id}]\n{c.text.strip()}" for c in chunks)
    return f"{header}\n{body}" if body else header


def render_plan(library: PromptLibrary, plan) -> str:
    lines = [library.section("plan")]
    for step in plan.steps:
        lines.append(f"- [{step.state_name}] {step.action_description} "
                     f"(next when: {step.transition_condition})")
    return "\n".join(lines)


def coder_messages(library: PromptLibrary, task, plan, chunks: list[Chunk],
                   profile: str, advice_text: Optional[str] = None,
                   previous_code: Optional[str] = None) -> list[ChatMessage]:
    if profile not in PROFILES:
        raise ValueError(f"unknown prompt profile {profile!r}; "
                         f"expected one of {sorted(PROFILES)}")
    enabled = PROFILES[profile]
    parts = [library.section("constraints")]
    if "syntax_hint" in enabled:
        parts.append(library.section("syntax_hint"))
    if "one_shot_example" in enabled:
        parts.append(library.section("one_shot_example"))
    if "rag_context" in enabled and chunks:
        parts.append(render_chunks(library, chunks))
    parts.append(render_task(task))
    if plan is not None:
        parts.append(render_plan(library, plan))
    if previous_code:
        parts.append("Previous attempt:\n```st\n" + previous_code.strip() + "\n```")
    if advice_text:
        parts.append(library.section("advice") + "\n" + advice_text.strip())
        parts.append(library.section("repair"))
    else:
        parts.append("Respond with the complete program in one fenced code block.")
    return [ChatMessage(Role.SYSTEM, library.section("role")),
            ChatMessage(Role.USER, "\n\n".join(parts))]


def planner_messages(library: PromptLibrary, task,
                     chunks: list[Chunk]) -> list[ChatMessage]:
    parts = [library.section("planner")]
    if chunks:
        parts.append(render_chunks(library, chunks))
    parts.append(render_task(task))
    return [ChatMessage(Role.SYSTEM, library.section("role")),
            ChatMessage(Role.USER, "\n\n".join(parts))]


def properties_messages(library: PromptLibrary, task) -> list[ChatMessage]:
    parts = [library.section("properties"), render_task(task)]
    return [ChatMessage(Role.SYSTEM, library.section("role")),
            ChatMessage(Role.USER, "\n\n".join(parts))]


def debug_messages(library: PromptLibrary, kind: str, code_text: str,
                   detail: str) -> list[ChatMessage]:
    template = library.section("debug_syntactic" if kind == "syntactic"
                               else "debug_semantic")
    body = f"{template}\n\nCode:\n```st\n{code_text.strip()}\n```\n\n{detail}"
    return [ChatMessage(Role.SYSTEM, library.section("role")),
            ChatMessage(Role.USER, body)]


def repair_prompt(messages: list[ChatMessage], bad_response: str,
                  problem: str) -> list[ChatMessage]:
    """Extend a conversation with a correction request after a malformed
    response."""
    return [*messages,
            ChatMessage(Role.ASSISTANT, bad_response),
            ChatMessage(Role.USER,
                        f"Your response was invalid: {problem}. "
                        f"Answer again following the required format exactly.")]
