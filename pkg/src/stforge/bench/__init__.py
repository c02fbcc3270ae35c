"""Benchmark corpus loading, pass@k evaluation, metric aggregation."""

from __future__ import annotations

from .corpus import (CorpusError, Difficulty, Task, TaskInterface,
                     default_corpus_path, load_corpus, parse_task)
from .evaluate import (AttemptsHistogram, DifficultyMetrics, MetricsReport,
                       Ratio, TaskResult, aggregate, evaluate_task)
from .report import FORMATS, render_report

__all__ = [
    "AttemptsHistogram", "CorpusError", "Difficulty", "DifficultyMetrics",
    "FORMATS", "MetricsReport", "Ratio", "Task", "TaskInterface",
    "TaskResult", "aggregate", "default_corpus_path", "evaluate_task",
    "load_corpus", "parse_task", "render_report",
]
