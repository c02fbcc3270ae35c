"""Vector store over document chunks with cosine-similarity retrieval.

Production deployments plug in a remote embedding endpoint; tests and the
default pipeline use a deterministic feature-hashing embedder (fixed
dimension, token unigrams, sign bit from the hash).
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Protocol, Union

import numpy as np

HASH_DIM = 256

_TOKEN_RE = re.compile(r"[a-z0-9_]+")


class Embedder(Protocol):
    dim: int

    def embed(self, text: str) -> np.ndarray: ...


class HashingEmbedder:
    """Feature hashing over lowercase token unigrams; deterministic across
    processes (sha256, not the salted builtin hash)."""

    def __init__(self, dim: int = HASH_DIM) -> None:
        self.dim = dim

    def embed(self, text: str) -> np.ndarray:
        vector = np.zeros(self.dim, dtype=np.float64)
        for token in _TOKEN_RE.findall(text.lower()):
            digest = hashlib.sha256(token.encode("utf-8")).digest()
            index = int.from_bytes(digest[:4], "big") % self.dim
            sign = 1.0 if digest[4] & 1 else -1.0
            vector[index] += sign
        return vector


@dataclass
class Chunk:
    doc_id: str
    text: str
    embedding: np.ndarray


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    norm = float(np.linalg.norm(a)) * float(np.linalg.norm(b))
    if norm == 0.0:
        return 0.0
    return float(np.dot(a, b)) / norm


@dataclass
class RagStore:
    embedder: Embedder = field(default_factory=HashingEmbedder)
    chunks: list[Chunk] = field(default_factory=list)

    def add(self, doc_id: str, text: str) -> Chunk:
        if any(c.doc_id == doc_id for c in self.chunks):
            raise ValueError(f"duplicate doc_id {doc_id!r}")
        embedding = np.asarray(self.embedder.embed(text), dtype=np.float64)
        if embedding.shape != (self.embedder.dim,):
            raise ValueError(f"embedder returned shape {embedding.shape}, "
                             f"expected ({self.embedder.dim},)")
        if not np.any(embedding):
            raise ValueError(f"chunk {doc_id!r} embeds to the zero vector")
        chunk = Chunk(doc_id=doc_id, text=text, embedding=embedding)
        self.chunks.append(chunk)
        return chunk

    @classmethod
    def from_jsonl(cls, path: Union[str, Path],
                   embedder: Embedder | None = None) -> "RagStore":
        store = cls(embedder=embedder or HashingEmbedder())
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            if not line.strip():
                continue
            record = json.loads(line)
            store.add(record["doc_id"], record["text"])
        return store

    def __len__(self) -> int:
        return len(self.chunks)


def retrieve(store: RagStore, query: str, k: int) -> list[Chunk]:
    """Top-k chunks by cosine similarity, ties broken by ascending doc_id."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if not store.chunks:
        return []
    query_vec = np.asarray(store.embedder.embed(query), dtype=np.float64)
    scored = sorted(store.chunks,
                    key=lambda c: (-cosine(query_vec, c.embedding), c.doc_id))
    return scored[:k]
