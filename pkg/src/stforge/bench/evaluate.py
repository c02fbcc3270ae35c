"""Pass@k evaluation and metric aggregation.

A task counts as *compiled* when any of its k outcomes compiled, *verifiable*
when some outcome produced verification models for at least 80% of the
task's properties (inclusive boundary, exact integer arithmetic), and
*passed* when some outcome compiled with every non-trivial property Proved.

``attempts_to_compile`` accumulates across the k outcomes in order, so a
task whose first two runs never compile and whose third compiles first try
lands in the "3 or more" bucket.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..agents.pipeline import PipelineOutcome
from .corpus import Difficulty, Task


@dataclass(frozen=True)
class Ratio:
    passed: int
    total: int

    @property
    def pct(self) -> float:
        if self.total == 0:
            return 0.0
        return round(100.0 * self.passed / self.total, 1)

    def display(self) -> str:
        return f"{self.passed} {self.total} {self.pct:.1f}%"

    def to_json(self) -> dict:
        return {"passed": self.passed, "total": self.total, "pct": self.pct}


@dataclass
class TaskResult:
    task_id: str
    difficulty: Difficulty
    compiled: bool
    verifiable: bool
    passed: bool
    attempts_to_compile: Optional[int]
    segments_total: int = 0
    segments_verifiable: int = 0

    def to_json(self) -> dict:
        return {
            "task_id": self.task_id,
            "difficulty": self.difficulty.value,
            "compiled": self.compiled,
            "verifiable": self.verifiable,
            "passed": self.passed,
            "attempts_to_compile": self.attempts_to_compile,
            "segments_total": self.segments_total,
            "segments_verifiable": self.segments_verifiable,
        }


def _meets_80pct(modeled: int, total: int) -> bool:
    # "at least 80%" with the boundary inclusive: 4/5 of the properties.
    return total > 0 and 5 * modeled >= 4 * total


def evaluate_task(task: Task, outcomes: list[PipelineOutcome]) -> TaskResult:
    if not outcomes:
        raise ValueError(f"task {task.id}: need at least one outcome")
    compiled = any(o.compiled for o in outcomes)
    total_properties = len(task.properties)
    verifiable = any(_meets_80pct(o.properties_modeled, total_properties)
                     for o in outcomes)
    passed = any(o.success for o in outcomes)

    attempts_to_compile: Optional[int] = None
    consumed = 0
    for outcome in outcomes:
        if outcome.attempts_to_compile is not None:
            attempts_to_compile = consumed + outcome.attempts_to_compile
            break
        consumed += len(outcome.attempts)

    segments_verifiable = sum(
        1 for o in outcomes if any(a.verifiable for a in o.attempts))
    return TaskResult(
        task_id=task.id, difficulty=task.difficulty, compiled=compiled,
        verifiable=verifiable, passed=passed,
        attempts_to_compile=attempts_to_compile,
        segments_total=len(outcomes),
        segments_verifiable=segments_verifiable)


@dataclass
class DifficultyMetrics:
    syntax_compilation: Ratio
    verifiable_rate: Ratio
    pass_rate: Ratio

    def to_json(self) -> dict:
        return {
            "syntax_compilation": self.syntax_compilation.to_json(),
            "verifiable_rate": self.verifiable_rate.to_json(),
            "pass_rate": self.pass_rate.to_json(),
        }


@dataclass
class AttemptsHistogram:
    one: Ratio
    two: Ratio
    three_plus: Ratio

    def to_json(self) -> dict:
        return {"one": self.one.to_json(), "two": self.two.to_json(),
                "three_plus": self.three_plus.to_json()}


@dataclass
class MetricsReport:
    per_difficulty: dict[Difficulty, DifficultyMetrics] = field(default_factory=dict)
    attempts_histogram: Optional[AttemptsHistogram] = None
    # Auxiliary statistic: verifiable code segments over all generated
    # segments, the alternative per-segment reading of the verifiable rate.
    segment_verifiable: Ratio = Ratio(0, 0)

    def to_json(self) -> dict:
        return {
            "per_difficulty": {d.value: m.to_json()
                               for d, m in sorted(self.per_difficulty.items(),
                                                  key=lambda kv: kv[0].value)},
            "attempts_histogram": (self.attempts_histogram.to_json()
                                   if self.attempts_histogram else None),
            "segment_verifiable": self.segment_verifiable.to_json(),
        }


def aggregate(results: list[TaskResult]) -> MetricsReport:
    """Fold per-task results into the benchmark's ratio tables."""
    report = MetricsReport()
    for difficulty in Difficulty:
        subset = [r for r in results if r.difficulty is difficulty]
        if not subset:
            continue
        total = len(subset)
        report.per_difficulty[difficulty] = DifficultyMetrics(
            syntax_compilation=Ratio(sum(r.compiled for r in subset), total),
            verifiable_rate=Ratio(sum(r.verifiable for r in subset), total),
            pass_rate=Ratio(sum(r.passed for r in subset), total),
        )
    compiled = [r for r in results if r.compiled
                and r.attempts_to_compile is not None]
    if compiled:
        total = len(compiled)
        one = sum(1 for r in compiled if r.attempts_to_compile == 1)
        two = sum(1 for r in compiled if r.attempts_to_compile == 2)
        report.attempts_histogram = AttemptsHistogram(
            one=Ratio(one, total), two=Ratio(two, total),
            three_plus=Ratio(total - one - two, total))
    report.segment_verifiable = Ratio(
        sum(r.segments_verifiable for r in results),
        sum(r.segments_total for r in results))
    return report
