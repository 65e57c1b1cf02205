"""Word-vector store and the frame/sentence embedding arithmetic.

Sentence embeddings are plain sums of word vectors; frame embeddings
are means over trigger-lemma tokens and example content words. Cosine
of a zero vector is defined as 0 (no evidence), never an error.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import IO, Iterable

import numpy as np

from .errors import DimensionMismatch, EmptyVocabulary, ParseError
from .ontology import FrameDef
from .tokens import tokenize

Vector = np.ndarray


class EmbeddingStore:
    """Immutable token->vector map; lookups lowercase their argument."""

    def __init__(self, dimension: int, vocab: dict[str, Vector],
                 stopwords: frozenset[str] = frozenset()):
        if dimension <= 0:
            raise ValueError("dimension must be positive")
        self.dimension = dimension
        self.vocab = vocab
        self.stopwords = stopwords

    def __contains__(self, token: str) -> bool:
        return token.lower() in self.vocab

    def get(self, token: str) -> Vector | None:
        return self.vocab.get(token.lower())

    def zero(self) -> Vector:
        return np.zeros(self.dimension)

    def with_stopwords(self, stopwords: Iterable[str]) -> "EmbeddingStore":
        return EmbeddingStore(self.dimension, self.vocab,
                              frozenset(w.lower() for w in stopwords))


@dataclass(frozen=True)
class FrameEmbedding:
    frame_id: str
    vector: Vector
    support_count: int

    @property
    def excluded(self) -> bool:
        # frames with no in-vocabulary contributors cannot be ranked
        return self.support_count == 0


def load_vectors(source: IO[bytes] | IO[str] | str | bytes) -> EmbeddingStore:
    """Parse whitespace-delimited vectors: `token v1 v2 ... vD` per line.

    Duplicate tokens: last wins. Raises DimensionMismatch on a line with
    the wrong arity, ParseError on non-numeric components, and
    EmptyVocabulary if no vectors were read.
    """
    if hasattr(source, "read"):
        raw = source.read()
    else:
        raw = source
    if isinstance(raw, bytes):
        raw = raw.decode("utf-8")
    vocab: dict[str, Vector] = {}
    dimension: int | None = None
    for lineno, line in enumerate(raw.splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.split()
        token, comps = parts[0], parts[1:]
        if dimension is None:
            if not comps:
                raise DimensionMismatch(f"line {lineno}: no vector components")
            dimension = len(comps)
        if len(comps) != dimension:
            raise DimensionMismatch(
                f"line {lineno}: expected {dimension} components, got {len(comps)}"
            )
        try:
            values = np.array([float(c) for c in comps])
        except ValueError:
            raise ParseError("non-numeric vector component", line=lineno) from None
        vocab[token.lower()] = values
    if not vocab:
        raise EmptyVocabulary("vector file contains no vectors")
    assert dimension is not None
    return EmbeddingStore(dimension, vocab)


def load_stopwords(source: IO[bytes] | IO[str] | str | bytes) -> frozenset[str]:
    if hasattr(source, "read"):
        raw = source.read()
    else:
        raw = source
    if isinstance(raw, bytes):
        raw = raw.decode("utf-8")
    return frozenset(
        w.strip().lower() for w in raw.splitlines()
        if w.strip() and not w.startswith("#")
    )


def sentence_embedding(store: EmbeddingStore, tokens: list[str]) -> Vector:
    """Element-wise sum over in-vocabulary tokens; all-OOV gives zeros."""
    total = store.zero()
    for tok in tokens:
        vec = store.get(tok)
        if vec is not None:
            total = total + vec
    return total


def embed_text(store: EmbeddingStore, text: str) -> Vector:
    return sentence_embedding(store, [t.surface for t in tokenize(text) if t.is_word])


def frame_embedding(store: EmbeddingStore, frame: FrameDef) -> FrameEmbedding:
    """Mean over trigger-lemma tokens plus example content words.

    Contributors are deduplicated token strings; stopwords are removed
    from example sentences only, never from triggers. A frame whose
    contributors are all out of vocabulary gets support_count 0 and is
    flagged for exclusion from ranking.
    """
    contributors: list[str] = []
    seen: set[str] = set()

    def add(token: str) -> None:
        t = token.lower()
        if t not in seen:
            seen.add(t)
            contributors.append(t)

    for lemma in frame.trigger_lemmas:
        for part in lemma.split():
            add(part)
    for ex in frame.examples:
        for tok in tokenize(ex.text):
            if tok.is_word and tok.surface.lower() not in store.stopwords:
                add(tok.surface)

    total = store.zero()
    support = 0
    for tok in contributors:
        vec = store.get(tok)
        if vec is not None:
            total = total + vec
            support += 1
    vector = total / support if support else total
    return FrameEmbedding(frame_id=frame.id, vector=vector, support_count=support)


def cosine(a: Vector, b: Vector) -> float:
    """dot(a,b)/(|a||b|), with zero-norm inputs mapping to 0.0."""
    if a.shape != b.shape:
        raise DimensionMismatch(f"{a.shape} vs {b.shape}")
    na = float(np.linalg.norm(a))
    nb = float(np.linalg.norm(b))
    if na == 0.0 or nb == 0.0:
        return 0.0
    return float(np.dot(a, b) / (na * nb))
