"""Auto-complete with frame-compatibility filtering.

Candidates come from a pluggable generator: an external endpoint, or a
deterministic retrieval stub that ranks a bundled corpus by embedding
similarity. Candidates that re-parse to a different frame than the one
the user already committed, or that do not land in the active slot, are
filtered out.
"""

from __future__ import annotations

from dataclasses import dataclass

from .embedding import EmbeddingStore, cosine, sentence_embedding
from .errors import GeneratorUnavailable
from .recognizer import FrameInterpretation, Recognizer
from .tokens import tokenize


@dataclass(frozen=True)
class CompletionCandidate:
    text: str  # continuation only
    full_text: str  # prior + separator + continuation
    score: float

    def to_dict(self) -> dict:
        return {"text": self.text, "full_text": self.full_text, "score": self.score}


class RetrievalStub:
    """Ranks corpus lines by similarity to the prior text and emits each
    line's continuation after its longest head-token overlap with the
    prior's tail."""

    kind = "retrieval_stub"

    def __init__(self, lines: list[str], store: EmbeddingStore):
        self.lines = [ln.strip() for ln in lines if ln.strip()]
        self.store = store

    @classmethod
    def from_path(cls, path, store: EmbeddingStore) -> "RetrievalStub":
        with open(path, encoding="utf-8") as fh:
            return cls(fh.readlines(), store)

    def complete(self, prior: str, max_n: int) -> list[CompletionCandidate]:
        prior_tokens = [t.surface.lower() for t in tokenize(prior) if t.is_word]
        prior_vec = sentence_embedding(self.store, prior_tokens)
        scored: list[tuple[float, str, str]] = []
        for line in self.lines:
            line_toks = [t for t in tokenize(line) if t.is_word]
            line_words = [t.surface.lower() for t in line_toks]
            overlap = 0
            limit = min(len(prior_tokens), len(line_words))
            for k in range(limit, 0, -1):
                if prior_tokens[-k:] == line_words[:k]:
                    overlap = k
                    break
            if overlap == len(line_words):
                continue  # line adds nothing beyond the prior
            start = line_toks[overlap].char_span[0] if overlap else 0
            continuation = line[start:].strip()
            if not continuation:
                continue
            score = cosine(prior_vec, sentence_embedding(self.store, line_words))
            scored.append((score, line, continuation))
        scored.sort(key=lambda item: (-item[0], item[1]))
        out: list[CompletionCandidate] = []
        seen: set[str] = set()
        for score, _line, continuation in scored:
            if continuation in seen:
                continue
            seen.add(continuation)
            out.append(CompletionCandidate(
                text=continuation,
                full_text=join_completion(prior, continuation),
                score=score,
            ))
            if len(out) >= max_n:
                break
        return out


class ExternalGenerator:
    """HTTP generation endpoint: request {"prior","n"}, response
    {"completions":[{"text","score"}]}."""

    kind = "external"

    def __init__(self, endpoint: str, timeout: float = 2.0):
        self.endpoint = endpoint
        self.timeout = timeout

    def complete(self, prior: str, max_n: int) -> list[CompletionCandidate]:
        import httpx

        try:
            resp = httpx.post(self.endpoint, json={"prior": prior, "n": max_n},
                              timeout=self.timeout)
            resp.raise_for_status()
            body = resp.json()
        except Exception as e:
            raise GeneratorUnavailable(str(e)) from e
        out = []
        for item in body.get("completions", [])[:max_n]:
            text = item["text"]
            out.append(CompletionCandidate(
                text=text,
                full_text=join_completion(prior, text),
                score=float(item.get("score", 0.0)),
            ))
        return out


def join_completion(prior: str, continuation: str) -> str:
    if not prior:
        return continuation
    return prior.rstrip() + " " + continuation.lstrip()


def generate(binding, prior_text: str, max_n: int) -> list[CompletionCandidate]:
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    return binding.complete(prior_text, max_n)


def filter_compatible(candidates: list[CompletionCandidate],
                      committed: FrameInterpretation | None,
                      active_role: str | None,
                      recognizer: Recognizer) -> list[CompletionCandidate]:
    """Keep candidates whose re-parse agrees with the committed frame
    (subsumption either way counts) and whose continuation lands in the
    active role's span. Order is preserved; no commitment means no
    filtering."""
    if committed is None:
        return list(candidates)
    ontology = recognizer.ontology
    kept = []
    for cand in candidates:
        interps = recognizer.parse(cand.full_text)
        if not interps:
            continue
        top = interps[0]
        same = (
            top.frame_id == committed.frame_id
            or ontology.subsumes(top.frame_id, committed.frame_id)
            or ontology.subsumes(committed.frame_id, top.frame_id)
        )
        if not same:
            continue
        if active_role is not None:
            binding = top.role_bindings.get(active_role)
            if binding is None:
                continue
            cont_start = len(cand.full_text) - len(cand.text)
            if not (binding[0] < len(cand.full_text) and binding[1] > cont_start):
                continue
        kept.append(cand)
    return kept
