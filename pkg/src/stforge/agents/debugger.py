"""Debugging agent: chain-of-thought analysis of compiler diagnostics or a
violated property, parsed into structured fixing advice."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from ..checker.verdict import Verdict, VerdictStatus
from ..frontend.diagnostics import Diagnostic, SourceSpan
from ..smv.model import Property
from .backends import GenerationParams, LlmBackend
from .common import CallBudget, parse_with_retries
from .prompts import PromptLibrary, debug_messages, default_library

_TARGET_RE = re.compile(r"^-\s*(\d+):(\d+)(?::(\d+))?\s*$")


class AdviceKind(Enum):
    SYNTACTIC = "syntactic"
    SEMANTIC = "semantic"


@dataclass
class FixAdvice:
    kind: AdviceKind
    analysis: str
    advice: str
    target_spans: list[SourceSpan] = field(default_factory=list)
    source_verdict: Optional[str] = None  # property id, semantic advice only

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "analysis": self.analysis,
            "advice": self.advice,
            "target_spans": [{"line": s.line, "column": s.column}
                             for s in self.target_spans],
            "source_verdict": self.source_verdict,
        }


def _parse_advice(response: str, kind: AdviceKind,
                  source_verdict: Optional[str]) -> FixAdvice:
    analysis_match = re.search(r"^##\s*Analysis\s*$", response, re.MULTILINE)
    advice_match = re.search(r"^##\s*Advice\s*$", response, re.MULTILINE)
    if analysis_match is None or advice_match is None:
        raise ValueError("missing required '## Analysis' / '## Advice' headers")
    targets_match = re.search(r"^##\s*Targets\s*$", response, re.MULTILINE)
    analysis = response[analysis_match.end():advice_match.start()].strip()
    advice_end = targets_match.start() if targets_match else len(response)
    advice = response[advice_match.end():advice_end].strip()
    spans: list[SourceSpan] = []
    if targets_match:
        for line in response[targets_match.end():].strip().splitlines():
            match = _TARGET_RE.match(line.strip())
            if match:
                length = int(match.group(3)) if match.group(3) else 1
                spans.append(SourceSpan("<generated>", int(match.group(1)),
                                        int(match.group(2)), length))
    return FixAdvice(kind=kind, analysis=analysis, advice=advice,
                     target_spans=spans, source_verdict=source_verdict)


def _render_diagnostics(diagnostics: list[Diagnostic]) -> str:
    lines = ["Compiler diagnostics:"]
    for diag in diagnostics:
        lines.append(f"- line {diag.span.line}, column {diag.span.column}: "
                     f"[{diag.code}] {diag.message}"
                     + (f" ({diag.hint})" if diag.hint else ""))
    return "\n".join(lines)


def debug_syntactic(backend: LlmBackend, code_text: str,
                    diagnostics: list[Diagnostic],
                    params: GenerationParams = GenerationParams(),
                    library: Optional[PromptLibrary] = None,
                    budget: Optional[CallBudget] = None) -> FixAdvice:
    """Advice from compiler errors; needs at least one Error diagnostic."""
    from ..frontend.diagnostics import has_errors

    if not has_errors(diagnostics):
        raise ValueError("debug_syntactic needs at least one Error diagnostic")
    library = library or default_library()
    messages = debug_messages(library, "syntactic", code_text,
                              _render_diagnostics(diagnostics))
    return parse_with_retries(
        backend, messages, params,
        lambda text: _parse_advice(text, AdviceKind.SYNTACTIC, None), budget)


def _render_counterexample(verdict: Verdict) -> str:
    assert verdict.counterexample is not None
    lines = []
    for step, state in enumerate(verdict.counterexample):
        label = "initial state" if step == 0 else f"after cycle {step}"
        values = ", ".join(f"{k} = {_fmt(v)}" for k, v in sorted(state.items())
                           if not k.startswith("_"))
        hidden = ", ".join(f"{k} = {_fmt(v)}" for k, v in sorted(state.items())
                           if k.startswith("_latch_"))
        lines.append(f"- {label}: {values}"
                     + (f" (inputs used: {hidden})" if step and hidden else ""))
    return "\n".join(lines)


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "TRUE" if value else "FALSE"
    return str(value)


def debug_semantic(backend: LlmBackend, code_text: str, verdict: Verdict,
                   prop: Property,
                   params: GenerationParams = GenerationParams(),
                   library: Optional[PromptLibrary] = None,
                   budget: Optional[CallBudget] = None) -> FixAdvice:
    """Advice from a violated property and its counterexample trace."""
    if verdict.status is not VerdictStatus.VIOLATED or not verdict.counterexample:
        raise ValueError("debug_semantic needs a Violated verdict with a "
                         "counterexample")
    library = library or default_library()
    detail = "\n".join([
        f"Violated property {prop.id}: {prop.expr_text}",
        f"Meaning: {prop.description}" if prop.description else "",
        "Counterexample trace (one line per scan cycle):",
        _render_counterexample(verdict),
    ])
    messages = debug_messages(library, "semantic", code_text, detail)
    return parse_with_retries(
        backend, messages, params,
        lambda text: _parse_advice(text, AdviceKind.SEMANTIC, prop.id), budget)
