"""Deterministic rendering of a MetricsReport as text, JSON, or a markdown
table mirroring the benchmark's X Y Z% convention."""

from __future__ import annotations

import json

from .corpus import Difficulty
from .evaluate import MetricsReport

FORMATS = ("text", "json", "markdown-table")

_DIFFICULTY_LABEL = {Difficulty.EASY: "Easy", Difficulty.MEDIUM: "Medium"}


def render_report(report: MetricsReport, format: str = "text") -> str:
    if format == "json":
        return json.dumps(report.to_json(), indent=2, sort_keys=True) + "\n"
    if format == "markdown-table":
        return _markdown(report)
    if format == "text":
        return _text(report)
    raise ValueError(f"unknown report format {format!r}; expected one of {FORMATS}")


def _markdown(report: MetricsReport) -> str:
    lines = ["| Level | Syntax Compilation | Verifiable Rate | Pass Rate |",
             "| --- | --- | --- | --- |"]
    for difficulty in Difficulty:
        metrics = report.per_difficulty.get(difficulty)
        if metrics is None:
            continue
        lines.append(f"| {_DIFFICULTY_LABEL[difficulty]} "
                     f"| {metrics.syntax_compilation.display()} "
                     f"| {metrics.verifiable_rate.display()} "
                     f"| {metrics.pass_rate.display()} |")
    if report.attempts_histogram is not None:
        hist = report.attempts_histogram
        lines.append("")
        lines.append("| Attempts to compile | 1 time | 2 time | 3 or more |")
        lines.append("| --- | --- | --- | --- |")
        lines.append(f"| All compiled tasks | {hist.one.display()} "
                     f"| {hist.two.display()} | {hist.three_plus.display()} |")
    return "\n".join(lines) + "\n"


def _text(report: MetricsReport) -> str:
    lines = ["benchmark metrics (passed / total / rate)"]
    for difficulty in Difficulty:
        metrics = report.per_difficulty.get(difficulty)
        if metrics is None:
            continue
        label = _DIFFICULTY_LABEL[difficulty]
        lines.append(f"  {label}:")
        lines.append(f"    syntax compilation: {metrics.syntax_compilation.display()}")
        lines.append(f"    verifiable rate:    {metrics.verifiable_rate.display()}")
        lines.append(f"    pass rate:          {metrics.pass_rate.display()}")
    if report.attempts_histogram is not None:
        hist = report.attempts_histogram
        lines.append("  attempts to first successful compile:")
        lines.append(f"    1 time:    {hist.one.display()}")
        lines.append(f"    2 time:    {hist.two.display()}")
        lines.append(f"    3 or more: {hist.three_plus.display()}")
    if report.segment_verifiable.total:
        lines.append(f"  verifiable segments (auxiliary): "
                     f"{report.segment_verifiable.display()}")
    return "\n".join(lines) + "\n"
