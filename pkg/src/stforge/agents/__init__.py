"""LLM-backed closed-loop code generation agents."""

from __future__ import annotations

from .backends import (BackendError, ChatMessage, GenerationParams,
                       HttpBackendConfig, LlmBackend, OpenAiHttpBackend,
                       RecordingBackend, ReplayBackend, ReplayMiss, Role,
                       ScriptedBackend, prompt_hash)
from .coder import code, repair
from .common import (AgentError, AgentParseError, BudgetExhausted, CallBudget,
                     NoCodeError, NoPropertiesError)
from .debugger import AdviceKind, FixAdvice, debug_semantic, debug_syntactic
from .pipeline import (AgentBackends, GenerationAttempt, PipelineConfig,
                       PipelineOutcome, PipelineState, run_pipeline)
from .planner import Plan, PlanStep, plan
from .prompts import PROFILES, PromptLibrary, default_library
from .properties import generate_properties
from .rag import Chunk, HashingEmbedder, RagStore, cosine, retrieve

__all__ = [
    "AgentBackends", "AgentError", "AgentParseError", "AdviceKind",
    "BackendError", "BudgetExhausted", "CallBudget", "ChatMessage", "Chunk",
    "FixAdvice", "GenerationAttempt", "GenerationParams", "HashingEmbedder",
    "HttpBackendConfig", "LlmBackend", "NoCodeError", "NoPropertiesError",
    "OpenAiHttpBackend", "PROFILES", "Plan", "PlanStep", "PipelineConfig",
    "PipelineOutcome", "PipelineState", "PromptLibrary", "RagStore",
    "RecordingBackend", "ReplayBackend", "ReplayMiss", "Role",
    "ScriptedBackend", "code", "cosine", "debug_semantic", "debug_syntactic",
    "default_library", "generate_properties", "plan", "prompt_hash", "repair",
    "retrieve", "run_pipeline",
]
