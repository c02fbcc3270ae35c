"""Planning agent: task -> ranked implementation plans in an automata-like
step format."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .backends import GenerationParams, LlmBackend
from .common import CallBudget, first_json_block, parse_with_retries
from .prompts import PromptLibrary, default_library, planner_messages
from .rag import Chunk


@dataclass(frozen=True)
class PlanStep:
    state_name: str
    action_description: str
    transition_condition: str


@dataclass(frozen=True)
class Plan:
    id: str
    rank: int
    steps: tuple[PlanStep, ...]

    def to_json(self) -> dict:
        return {"id": self.id, "rank": self.rank,
                "steps": [vars(s) for s in self.steps]}


def _parse_plans(response: str) -> list[Plan]:
    data = first_json_block(response)
    if not isinstance(data, dict) or "plans" not in data:
        raise ValueError("expected a JSON object with a 'plans' array")
    raw_plans = data["plans"]
    if not isinstance(raw_plans, list) or not raw_plans:
        raise ValueError("'plans' must be a non-empty array")
    plans: list[Plan] = []
    ranks: set[int] = set()
    for i, raw in enumerate(raw_plans):
        rank = raw.get("rank")
        if not isinstance(rank, int):
            raise ValueError(f"plan {i} is missing an integer 'rank'")
        if rank in ranks:
            raise ValueError(f"duplicate plan rank {rank}")
        ranks.add(rank)
        raw_steps = raw.get("steps")
        if not isinstance(raw_steps, list) or not raw_steps:
            raise ValueError(f"plan {i} needs a non-empty 'steps' array")
        steps = []
        names: set[str] = set()
        for j, step in enumerate(raw_steps):
            name = step.get("state_name")
            if not isinstance(name, str) or not name:
                raise ValueError(f"plan {i} step {j} needs a 'state_name'")
            if name in names:
                raise ValueError(f"plan {i} repeats state_name {name!r}")
            names.add(name)
            steps.append(PlanStep(
                state_name=name,
                action_description=str(step.get("action_description", "")),
                transition_condition=str(step.get("transition_condition", ""))))
        plans.append(Plan(id=f"plan-{rank}", rank=rank, steps=tuple(steps)))
    plans.sort(key=lambda p: p.rank)
    return plans


def plan(backend: LlmBackend, task, context: list[Chunk],
         params: GenerationParams = GenerationParams(),
         library: Optional[PromptLibrary] = None,
         budget: Optional[CallBudget] = None) -> list[Plan]:
    """Generate and rank implementation plans (rank 1 is tried first)."""
    library = library or default_library()
    messages = planner_messages(library, task, context)
    return parse_with_retries(backend, messages, params, _parse_plans, budget)
