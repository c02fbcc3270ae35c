"""Closed-loop orchestration: retrieve, plan, code, compile, debug, verify.

Plans are tried in rank order.  Within a plan, compile failures trigger
syntactic debugging and repair; a compiled program is translated and model
checked, and a violated property triggers semantic debugging and repair.
The loop advances to the next plan when the per-plan fix budget is spent or
a repair returns unchanged code, and the whole run stops at the closed-form
backend-call bound::

    max_plans * (1 + 2 * max_fix_iters_per_plan) + 2

(one coding call plus debug/repair pairs per plan, plus one planning and one
property-generation call; parse-retry calls draw from the same budget).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from ..checker import CheckerConfig, Verdict, VerdictStatus, check
from ..frontend import CompileReport, compile_check, has_errors
from ..frontend import typecheck_expression
from ..frontend import ast as st_ast
from ..smv import TranslationError, check_verifiable, translate
from ..smv.model import Property
from .backends import GenerationParams, LlmBackend
from .coder import code as generate_code
from .coder import repair
from .common import AgentError, BudgetExhausted, CallBudget
from .debugger import FixAdvice, debug_semantic, debug_syntactic
from .planner import Plan, plan as generate_plans
from .prompts import PROFILES, PromptLibrary, default_library
from .properties import generate_properties
from .rag import RagStore, retrieve


@dataclass
class AgentBackends:
    """One backend per agent role; a single backend may serve them all."""

    planner: LlmBackend
    coder: LlmBackend
    debugger: LlmBackend
    properties: LlmBackend

    @classmethod
    def single(cls, backend: LlmBackend) -> "AgentBackends":
        return cls(planner=backend, coder=backend, debugger=backend,
                   properties=backend)

    @classmethod
    def coerce(cls, backends) -> "AgentBackends":
        if isinstance(backends, cls):
            return backends
        return cls.single(backends)


@dataclass
class PipelineConfig:
    prompt_profile: str = "full"
    max_plans: int = 3
    max_fix_iters_per_plan: int = 5
    retrieval_k: int = 3
    self_rag: bool = True
    params: GenerationParams = field(default_factory=GenerationParams)
    checker: CheckerConfig = field(default_factory=CheckerConfig)
    library: Optional[PromptLibrary] = None

    def __post_init__(self) -> None:
        if self.prompt_profile not in PROFILES:
            raise ValueError(f"unknown prompt profile {self.prompt_profile!r}")
        if self.max_plans < 1 or self.max_fix_iters_per_plan < 0:
            raise ValueError("max_plans >= 1 and max_fix_iters_per_plan >= 0")

    @property
    def call_bound(self) -> int:
        return self.max_plans * (1 + 2 * self.max_fix_iters_per_plan) + 2


@dataclass
class GenerationAttempt:
    code: str
    compile_report: CompileReport
    verifiable: bool = False
    properties_modeled: int = 0
    verdicts: Optional[list[Verdict]] = None
    fix_advice: Optional[FixAdvice] = None
    success: bool = False

    @property
    def compiled(self) -> bool:
        return self.compile_report.ok

    def to_json(self) -> dict:
        data: dict = {
            "code": self.code,
            "compiled": self.compiled,
            "diagnostics": [d.to_json() for d in self.compile_report.diagnostics],
            "verifiable": self.verifiable,
            "properties_modeled": self.properties_modeled,
            "success": self.success,
        }
        if self.verdicts is not None:
            data["verdicts"] = [v.to_json(include_elapsed=False)
                                for v in self.verdicts]
        if self.fix_advice is not None:
            data["fix_advice"] = self.fix_advice.to_json()
        return data


@dataclass
class PipelineState:
    """The loop's evolving record; attempts are append-only."""

    task: object
    retrieved_context: list = field(default_factory=list)
    plans: list[Plan] = field(default_factory=list)
    current_plan_index: int = 0
    attempts: list[GenerationAttempt] = field(default_factory=list)
    budget: Optional[CallBudget] = None


@dataclass
class PipelineOutcome:
    task_id: str
    success: bool
    attempts: list[GenerationAttempt]
    verdicts: list[Verdict]
    final_code: Optional[str]
    attempts_to_compile: Optional[int]
    backend_calls: int
    properties_total: int
    properties_modeled: int  # best attempt
    error: Optional[str] = None

    @property
    def compiled(self) -> bool:
        return self.attempts_to_compile is not None

    def metrics_raw(self) -> dict:
        return {
            "compiled": self.compiled,
            "verifiable_fraction": (self.properties_modeled / self.properties_total
                                    if self.properties_total else 0.0),
            "passed": self.success,
            "attempts_to_compile": self.attempts_to_compile,
            "backend_calls": self.backend_calls,
        }

    def to_json(self) -> dict:
        return {
            "task_id": self.task_id,
            "success": self.success,
            "attempts": [a.to_json() for a in self.attempts],
            "verdicts": [v.to_json(include_elapsed=False) for v in self.verdicts],
            "final_code": self.final_code,
            "attempts_to_compile": self.attempts_to_compile,
            "backend_calls": self.backend_calls,
            "properties_total": self.properties_total,
            "properties_modeled": self.properties_modeled,
            "error": self.error,
        }

    def to_json_text(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"


def _evaluate_attempt(code_text: str, properties: list[Property],
                      config: PipelineConfig) -> GenerationAttempt:
    """Compile, gate on verifiability, translate and check one candidate."""
    report = compile_check(code_text, filename="<generated>")
    attempt = GenerationAttempt(code=code_text, compile_report=report)
    if not report.ok:
        return attempt
    program = report.program
    assert program is not None
    if has_errors(check_verifiable(program)):
        return attempt
    attempt.verifiable = True
    decls = [*program.input_decls(), *program.state_decls()]
    typed = [p for p in properties
             if typecheck_expression(p.expr, decls)[0] is st_ast.ElemType.BOOL]
    if typed:
        try:
            model = translate(program, typed)
        except TranslationError:
            attempt.verifiable = False
            return attempt
        attempt.properties_modeled = len(typed)
        attempt.verdicts = check(model, config.checker)
    proved = {v.property_id for v in attempt.verdicts or []
              if v.status is VerdictStatus.PROVED}
    attempt.success = all(p.id in proved for p in properties if not p.trivial)
    return attempt


def _first_violation(attempt: GenerationAttempt,
                     properties: list[Property]) -> Optional[tuple[Verdict, Property]]:
    by_id = {p.id: p for p in properties}
    for verdict in attempt.verdicts or []:
        if verdict.status is VerdictStatus.VIOLATED and verdict.counterexample \
                and not by_id[verdict.property_id].trivial:
            return verdict, by_id[verdict.property_id]
    return None


def run_pipeline(task, backends, config: Optional[PipelineConfig] = None,
                 store: Optional[RagStore] = None) -> PipelineOutcome:
    """Run the full closed loop on one task.

    ``backends`` is an AgentBackends (or a single backend, used for every
    agent role).  Success means the final code compiles and every
    non-trivial task property is Proved.
    """
    config = config or PipelineConfig()
    suite = AgentBackends.coerce(backends)
    library = config.library or default_library()
    budget = CallBudget(config.call_bound)
    state = PipelineState(task=task, budget=budget)

    def outcome(success: bool, error: Optional[str] = None) -> PipelineOutcome:
        attempts_to_compile = next(
            (i for i, a in enumerate(state.attempts, start=1) if a.compiled),
            None)
        last_verdicts = next(
            (a.verdicts for a in reversed(state.attempts)
             if a.verdicts is not None), [])
        final_code = state.attempts[-1].code if state.attempts else None
        best_modeled = max((a.properties_modeled for a in state.attempts),
                           default=0)
        assert budget.used <= config.call_bound
        return PipelineOutcome(
            task_id=task.id, success=success, attempts=state.attempts,
            verdicts=list(last_verdicts), final_code=final_code,
            attempts_to_compile=attempts_to_compile,
            backend_calls=budget.used,
            properties_total=len(properties),
            properties_modeled=best_modeled, error=error)

    properties: list[Property] = list(task.properties or [])
    try:
        if store is not None and len(store):
            state.retrieved_context = retrieve(store, task.instruction,
                                               config.retrieval_k)
        if not properties:
            properties, _ = generate_properties(
                suite.properties, task, config.params, library, budget)
        state.plans = generate_plans(suite.planner, task,
                                     state.retrieved_context,
                                     config.params, library, budget)

        advice_counter = 0
        for plan_index, the_plan in enumerate(state.plans[:config.max_plans]):
            state.current_plan_index = plan_index
            code_text = generate_code(
                suite.coder, task, the_plan, state.retrieved_context,
                config.prompt_profile, config.params, library, budget)
            for fix_round in range(config.max_fix_iters_per_plan + 1):
                attempt = _evaluate_attempt(code_text, properties, config)
                state.attempts.append(attempt)
                if attempt.success:
                    return outcome(success=True)
                if fix_round == config.max_fix_iters_per_plan:
                    break
                if not attempt.compiled:
                    advice = debug_syntactic(
                        suite.debugger, code_text,
                        attempt.compile_report.diagnostics,
                        config.params, library, budget)
                else:
                    violation = _first_violation(attempt, properties)
                    if violation is None:
                        # Unverifiable or Unknown: advice cannot help; replan.
                        break
                    advice = debug_semantic(
                        suite.debugger, code_text, violation[0], violation[1],
                        config.params, library, budget)
                attempt.fix_advice = advice
                if config.self_rag and store is not None and advice.advice:
                    advice_counter += 1
                    store.add(f"fix-advice/{task.id}/{advice_counter}",
                              advice.advice)
                    state.retrieved_context = retrieve(
                        store, task.instruction, config.retrieval_k)
                new_code = repair(
                    suite.coder, task, code_text, advice, the_plan,
                    state.retrieved_context, config.prompt_profile,
                    config.params, library, budget)
                if new_code == code_text:
                    break  # stuck backend: advance to the next plan
                code_text = new_code
    except BudgetExhausted as exc:
        return outcome(success=False, error=str(exc))
    except AgentError as exc:
        return outcome(success=False, error=str(exc))
    return outcome(success=False)
