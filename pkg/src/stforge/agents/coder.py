"""Coding agent: plan -> Structured Text source, and advice-driven repair."""

from __future__ import annotations

from typing import Optional

from .backends import GenerationParams, LlmBackend
from .common import CallBudget, NoCodeError, complete, first_code_block
from .debugger import FixAdvice
from .planner import Plan
from .prompts import PromptLibrary, coder_messages, default_library
from .rag import Chunk


def code(backend: LlmBackend, task, plan: Optional[Plan], context: list[Chunk],
         prompt_profile: str = "full",
         params: GenerationParams = GenerationParams(),
         library: Optional[PromptLibrary] = None,
         budget: Optional[CallBudget] = None) -> str:
    """Generate ST source; the first fenced code block of the response."""
    library = library or default_library()
    messages = coder_messages(library, task, plan, context, prompt_profile)
    response = complete(backend, messages, params, budget)
    block = first_code_block(response)
    if block is None:
        raise NoCodeError("response contains no fenced code block")
    return block.strip() + "\n"


def repair(backend: LlmBackend, task, previous_code: str,
           fix_advice: Optional[FixAdvice], plan: Optional[Plan],
           context: list[Chunk], prompt_profile: str = "full",
           params: GenerationParams = GenerationParams(),
           library: Optional[PromptLibrary] = None,
           budget: Optional[CallBudget] = None) -> str:
    """Regenerate code applying fixing advice (omitted when empty)."""
    library = library or default_library()
    advice_text = fix_advice.advice if fix_advice is not None else None
    if advice_text is not None and not advice_text.strip():
        advice_text = None
    messages = coder_messages(library, task, plan, context, prompt_profile,
                              advice_text=advice_text,
                              previous_code=previous_code)
    response = complete(backend, messages, params, budget)
    block = first_code_block(response)
    if block is None:
        raise NoCodeError("repair response contains no fenced code block")
    return block.strip() + "\n"
