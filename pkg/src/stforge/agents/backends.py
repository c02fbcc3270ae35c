"""LLM backends: an OpenAI-compatible HTTP client plus deterministic
scripted, replay and recording backends for hermetic tests."""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Optional, Protocol, Union

import requests


class Role(Enum):
    SYSTEM = "system"
    USER = "user"
    ASSISTANT = "assistant"


@dataclass(frozen=True)
class ChatMessage:
    role: Role
    content: str

    def to_json(self) -> dict:
        return {"role": self.role.value, "content": self.content}


@dataclass(frozen=True)
class GenerationParams:
    temperature: float = 0.0
    max_tokens: int = 2048
    seed: Optional[int] = None

    def to_json(self) -> dict:
        data: dict = {"temperature": self.temperature,
                      "max_tokens": self.max_tokens}
        if self.seed is not None:
            data["seed"] = self.seed
        return data


class LlmBackend(Protocol):
    def complete(self, messages: list[ChatMessage],
                 params: GenerationParams) -> str: ...


class BackendError(Exception):
    pass


def prompt_hash(messages: list[ChatMessage], params: GenerationParams) -> str:
    payload = {"messages": [m.to_json() for m in messages],
               "params": params.to_json()}
    blob = json.dumps(payload, sort_keys=True, ensure_ascii=False)
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


class ScriptedBackend:
    """Returns a canned sequence of responses, one per call."""

    def __init__(self, responses: list[str]) -> None:
        self.responses = list(responses)
        self.calls = 0

    def complete(self, messages: list[ChatMessage],
                 params: GenerationParams) -> str:
        if self.calls >= len(self.responses):
            raise BackendError(
                f"scripted backend exhausted after {len(self.responses)} responses")
        response = self.responses[self.calls]
        self.calls += 1
        return response


class ReplayMiss(BackendError):
    pass


class ReplayBackend:
    """Answers from a transcript keyed by prompt hash; fully deterministic."""

    def __init__(self, transcript: dict[str, str]) -> None:
        self.transcript = dict(transcript)
        self.calls = 0

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "ReplayBackend":
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        return cls(data["responses"])

    def complete(self, messages: list[ChatMessage],
                 params: GenerationParams) -> str:
        key = prompt_hash(messages, params)
        if key not in self.transcript:
            raise ReplayMiss(f"no recorded response for prompt hash {key[:16]}…")
        self.calls += 1
        return self.transcript[key]


@dataclass
class RecordingBackend:
    """Wraps another backend and records prompt-hash -> response pairs,
    producing a transcript a ReplayBackend can serve."""

    inner: LlmBackend
    responses: dict[str, str] = field(default_factory=dict)

    def complete(self, messages: list[ChatMessage],
                 params: GenerationParams) -> str:
        response = self.inner.complete(messages, params)
        self.responses[prompt_hash(messages, params)] = response
        return response

    def save(self, path: Union[str, Path]) -> None:
        payload = {"format": "stforge-transcript-v1", "responses": self.responses}
        Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True),
                              encoding="utf-8")


@dataclass
class HttpBackendConfig:
    base_url: str
    model: str
    api_key_env: str = "OPENAI_API_KEY"
    timeout_s: float = 120.0

    def resolve_key(self) -> str:
        key = os.environ.get(self.api_key_env, "")
        if not key:
            raise BackendError(
                f"environment variable {self.api_key_env} is not set")
        return key


class OpenAiHttpBackend:
    """Chat-completions client for any OpenAI-compatible endpoint."""

    def __init__(self, config: HttpBackendConfig,
                 session: Optional[requests.Session] = None) -> None:
        self.config = config
        self._key = config.resolve_key()
        self.session = session or requests.Session()

    def complete(self, messages: list[ChatMessage],
                 params: GenerationParams) -> str:
        payload: dict = {
            "model": self.config.model,
            "messages": [m.to_json() for m in messages],
            "temperature": params.temperature,
            "max_tokens": params.max_tokens,
        }
        if params.seed is not None:
            payload["seed"] = params.seed
        url = self.config.base_url.rstrip("/") + "/chat/completions"
        try:
            response = self.session.post(
                url, json=payload, timeout=self.config.timeout_s,
                headers={"Authorization": f"Bearer {self._key}"})
        except requests.RequestException as exc:
            raise BackendError(f"request to {url} failed: {exc}") from exc
        if response.status_code != 200:
            raise BackendError(
                f"{url} returned {response.status_code}: {response.text[:200]}")
        try:
            return response.json()["choices"][0]["message"]["content"]
        except (KeyError, IndexError, ValueError) as exc:
            raise BackendError(f"malformed completion response: {exc}") from exc
