"""Verdicts and checker configuration."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Union

from ..frontend.diagnostics import Diagnostic

StateValuation = dict[str, Union[bool, int]]


class VerdictStatus(Enum):
    PROVED = "proved"
    VIOLATED = "violated"
    UNKNOWN = "unknown"


class Engine(Enum):
    INTERNAL = "internal"
    NUXMV_EXTERNAL = "nuxmv"


@dataclass
class VerdictStats:
    states_explored: int = 0
    elapsed_ms: int = 0


@dataclass
class Verdict:
    property_id: str
    status: VerdictStatus
    # Violated verdicts carry a full valuation per step, initial state first.
    counterexample: Optional[list[StateValuation]] = None
    stats: VerdictStats = field(default_factory=VerdictStats)
    diagnostic: Optional[Diagnostic] = None

    def to_json(self, include_elapsed: bool = True) -> dict:
        stats: dict = {"states_explored": self.stats.states_explored}
        if include_elapsed:
            stats["elapsed_ms"] = self.stats.elapsed_ms
        data: dict = {
            "property_id": self.property_id,
            "status": self.status.value,
            "stats": stats,
        }
        if self.counterexample is not None:
            data["counterexample"] = self.counterexample
        if self.diagnostic is not None:
            data["diagnostic"] = self.diagnostic.to_json()
        return data


@dataclass
class CheckerConfig:
    engine: Engine = Engine.INTERNAL
    state_cap: int = 2_000_000
    nuxmv_path: Optional[str] = None
    timeout_ms: int = 60_000

    def __post_init__(self) -> None:
        if self.state_cap <= 0:
            raise ValueError("state_cap must be positive")
        if self.engine is Engine.NUXMV_EXTERNAL and not self.nuxmv_path:
            raise ValueError("the nuxmv engine needs nuxmv_path")
