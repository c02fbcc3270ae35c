"""Shared agent plumbing: fenced-block parsing, retries, call budgeting."""

from __future__ import annotations

import json
import re
from typing import Callable, Optional, TypeVar

from .backends import ChatMessage, GenerationParams, LlmBackend
from .prompts import repair_prompt

MAX_PARSE_RETRIES = 2

_FENCE_RE = re.compile(r"```([A-Za-z0-9_+-]*)[ \t]*\n(.*?)```", re.DOTALL)


class AgentError(Exception):
    code = "E-AGENT"

    def __init__(self, message: str) -> None:
        super().__init__(f"{self.code}: {message}")
        self.message = message


class AgentParseError(AgentError):
    code = "E-AGENT-PARSE"


class NoCodeError(AgentError):
    code = "E-AGENT-NOCODE"


class NoPropertiesError(AgentError):
    code = "E-AGENT-NOPROPS"


class BudgetExhausted(AgentError):
    code = "E-AGENT-BUDGET"


class CallBudget:
    """Hard cap on backend calls for one pipeline run."""

    def __init__(self, limit: int) -> None:
        self.limit = limit
        self.used = 0

    def charge(self) -> None:
        if self.used >= self.limit:
            raise BudgetExhausted(f"backend call budget of {self.limit} exhausted")
        self.used += 1


def complete(backend: LlmBackend, messages: list[ChatMessage],
             params: GenerationParams,
             budget: Optional[CallBudget] = None) -> str:
    if budget is not None:
        budget.charge()
    return backend.complete(messages, params)


def fenced_blocks(text: str, language: Optional[str] = None) -> list[str]:
    blocks = []
    for match in _FENCE_RE.finditer(text):
        if language is None or match.group(1).lower() == language:
            blocks.append(match.group(2))
    return blocks


def first_code_block(text: str) -> Optional[str]:
    """First fenced block of any language; the stated extraction rule."""
    blocks = fenced_blocks(text)
    return blocks[0] if blocks else None


def first_json_block(text: str):
    """Parse the first fenced JSON block (falls back to any fenced block)."""
    candidates = fenced_blocks(text, "json") or fenced_blocks(text)
    if not candidates:
        raise ValueError("no fenced JSON block in response")
    return json.loads(candidates[0])


T = TypeVar("T")


def parse_with_retries(backend: LlmBackend, messages: list[ChatMessage],
                       params: GenerationParams,
                       parser: Callable[[str], T],
                       budget: Optional[CallBudget] = None) -> T:
    """Call the backend and parse; on malformed output, retry with a repair
    prompt up to MAX_PARSE_RETRIES times, then raise AgentParseError."""
    last_problem = ""
    for _ in range(MAX_PARSE_RETRIES + 1):
        response = complete(backend, messages, params, budget)
        try:
            return parser(response)
        except (ValueError, KeyError, TypeError) as exc:
            last_problem = str(exc)
            messages = repair_prompt(messages, response, last_problem)
    raise AgentParseError(f"response still malformed after "
                          f"{MAX_PARSE_RETRIES} retries: {last_problem}")
