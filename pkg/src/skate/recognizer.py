"""Concept recognizer: trigger detection, kNN frame ranking, span and
role heuristics, plus the external-parser client with graceful fallback.

The span detector is a boundary-token chunker standing in for a
dependency parse; it sits behind `SpanDetector` so a richer syntactic
front-end can replace it without touching the ranking pipeline.
"""

from __future__ import annotations

import json
import logging
import threading
import time
from dataclasses import dataclass, field

import numpy as np

from .embedding import EmbeddingStore, FrameEmbedding, cosine, frame_embedding, sentence_embedding
from .errors import NoCandidates, StorageError, UnknownFrame
from .ontology import Ontology, RoleKind
from .tokens import Token, TokenSeq, tokenize

log = logging.getLogger(__name__)

# Chunk boundaries for the span heuristic. "of" is deliberately absent:
# of-phrases stay attached to their head noun.
PREPOSITIONS = frozenset({
    "in", "on", "at", "from", "to", "with", "by", "for", "into", "onto",
    "over", "under", "about", "after", "before", "during", "through",
    "against", "between", "behind", "near", "without", "within", "upon",
    "across", "around", "toward", "towards", "off", "beside", "along",
})
SUBORDINATORS = frozenset({
    "because", "if", "when", "while", "although", "though", "that",
    "since", "unless", "until", "whether", "then", "than", "so", "as",
    "who", "whom", "which", "where", "why", "how", "what",
})
CONJUNCTIONS = frozenset({"and", "or", "but", "nor"})
# Trailing auxiliaries/negators stripped from chunk edges.
AUXILIARIES = frozenset({
    "be", "am", "is", "are", "was", "were", "been", "being",
    "do", "does", "did", "have", "has", "had", "having",
    "will", "would", "shall", "should", "can", "could", "may", "might",
    "must", "not", "don't", "doesn't", "didn't", "isn't", "aren't",
    "wasn't", "weren't", "cannot", "can't", "won't",
})
NEGATORS = frozenset({
    "not", "no", "never", "don't", "doesn't", "didn't", "isn't",
    "aren't", "wasn't", "weren't", "cannot", "can't", "won't",
})
# Determiners stay glued to their noun phrase even though they are
# function words; anything else leading a chunk (adverbs, auxiliaries)
# is trimmed.
DETERMINERS = frozenset({
    "the", "a", "an", "this", "that", "these", "those", "some", "any",
    "each", "every", "all", "both", "another", "other",
})


@dataclass(frozen=True)
class Trigger:
    lemma: str
    char_span: tuple[int, int]
    token_indices: tuple[int, ...]


@dataclass(frozen=True)
class FrameInterpretation:
    frame_id: str
    trigger_span: tuple[int, int]
    role_bindings: dict[str, tuple[int, int]]
    confidence: float
    source: str  # "external" | "knn"

    def to_dict(self) -> dict:
        return {
            "frame": self.frame_id,
            "trigger": list(self.trigger_span),
            "roles": {k: list(v) for k, v in self.role_bindings.items()},
            "confidence": self.confidence,
            "source": self.source,
        }


@dataclass(frozen=True)
class RecognizerConfig:
    k: int = 3
    low_confidence_threshold: float = 0.35
    role_similarity_floor: float = 0.15

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")


@dataclass
class CorrectionRecord:
    text: str
    chosen: FrameInterpretation
    rejected: list[str]
    timestamp: float = field(default_factory=time.time)

    def to_dict(self) -> dict:
        return {
            "frame": self.chosen.frame_id,
            "text": self.text,
            "trigger": list(self.chosen.trigger_span),
            "roles": {k: list(v) for k, v in self.chosen.role_bindings.items()},
            "rejected": list(self.rejected),
            "ts": self.timestamp,
        }


class ExternalParserClient:
    """Single request/response HTTP client for a supervised parser.

    Failures are never surfaced: parse() treats an unreachable or broken
    endpoint as "no results" and falls back to the kNN pipeline.
    """

    def __init__(self, endpoint: str, timeout: float = 2.0):
        self.endpoint = endpoint
        self.timeout = timeout

    def interpret(self, text: str, trigger: tuple[int, int] | None = None) -> list[FrameInterpretation]:
        import httpx

        payload = {"text": text, "trigger": list(trigger) if trigger else None}
        resp = httpx.post(self.endpoint, json=payload, timeout=self.timeout)
        resp.raise_for_status()
        body = resp.json()
        out = []
        for item in body.get("interpretations", []):
            out.append(FrameInterpretation(
                frame_id=item["frame"],
                trigger_span=tuple(item["trigger"]),
                role_bindings={k: tuple(v) for k, v in item.get("roles", {}).items()},
                confidence=float(item.get("confidence", 0.0)),
                source="external",
            ))
        return out


class TrainingLog:
    """Append-only newline-delimited JSON log of confirmed corrections.

    Appends are serialized through a single lock; records use the
    ontology's annotated-example shape so they can be re-ingested as
    frame examples.
    """

    def __init__(self, path):
        self.path = path
        self._lock = threading.Lock()

    def append(self, record: CorrectionRecord) -> None:
        line = json.dumps(record.to_dict(), sort_keys=True)
        try:
            with self._lock:
                with open(self.path, "a", encoding="utf-8") as fh:
                    fh.write(line + "\n")
        except OSError as e:
            raise StorageError(f"cannot append correction: {e}") from e

    def records(self) -> list[dict]:
        try:
            with open(self.path, encoding="utf-8") as fh:
                return [json.loads(line) for line in fh if line.strip()]
        except FileNotFoundError:
            return []
        except OSError as e:
            raise StorageError(str(e)) from e


class SpanDetector:
    """Boundary-token chunker over a TokenSeq (dependency-parse stand-in)."""

    def detect(self, tokens: TokenSeq, trigger: Trigger) -> list[tuple[int, int]]:
        trigger_idx = set(trigger.token_indices)
        chunks: list[list[tuple[int, Token]]] = []
        current: list[tuple[int, Token]] = []

        def flush() -> None:
            nonlocal current
            if current:
                chunks.append(current)
                current = []

        toks = tokens.tokens
        for i, tok in enumerate(toks):
            if i in trigger_idx:
                flush()
                continue
            if not tok.is_word:
                flush()
                continue
            lemma = tok.surface.lower()
            if lemma in SUBORDINATORS or tok.lemma in SUBORDINATORS:
                flush()
                continue
            if lemma in CONJUNCTIONS:
                prev_ok = bool(current) and not current[-1][1].is_function_word
                nxt = toks[i + 1] if i + 1 < len(toks) else None
                next_ok = nxt is not None and nxt.is_word and not nxt.is_function_word
                if prev_ok and next_ok:
                    current.append((i, tok))  # noun-run conjunction stays inside
                else:
                    flush()
                continue
            if lemma in PREPOSITIONS:
                flush()
                current.append((i, tok))  # preposition attaches to what follows
                continue
            current.append((i, tok))
        flush()

        spans: list[tuple[int, int]] = []
        for chunk in chunks:
            while chunk and chunk[-1][1].surface.lower() in AUXILIARIES:
                chunk.pop()
            while chunk:
                head = chunk[0][1].surface.lower()
                if (chunk[0][1].is_function_word and head not in DETERMINERS
                        and head not in PREPOSITIONS):
                    chunk.pop(0)
                else:
                    break
            if not chunk:
                continue
            if all(t.is_function_word for _, t in chunk):
                continue
            spans.append((chunk[0][1].char_span[0], chunk[-1][1].char_span[1]))
        return spans


class Recognizer:
    """kNN frame recognizer over immutable ontology and vector stores."""

    def __init__(self, ontology: Ontology, store: EmbeddingStore,
                 config: RecognizerConfig | None = None,
                 external: ExternalParserClient | None = None,
                 training_log: TrainingLog | None = None):
        self.ontology = ontology
        self.store = store
        self.config = config or RecognizerConfig()
        self.external = external
        self.training_log = training_log
        self.span_detector = SpanDetector()
        self._frame_embeddings: dict[str, FrameEmbedding] = {
            fid: frame_embedding(store, f) for fid, f in ontology.frames.items()
        }
        self._role_vectors: dict[tuple[str, str], np.ndarray] = {}

    # --- pipeline stages --------------------------------------------------

    def analyze(self, text: str) -> TokenSeq:
        return tokenize(text, self.store.stopwords)

    def find_triggers(self, tokens: TokenSeq) -> list[Trigger]:
        """All trigger hits; multiword runs matched greedily at each position."""
        hits: list[Trigger] = []
        toks = tokens.tokens
        consumed: set[int] = set()
        i = 0
        while i < len(toks):
            tok = toks[i]
            if not tok.is_word:
                i += 1
                continue
            matched = None
            for run in self.ontology.multiword_triggers.get(tok.lemma, []):
                n = len(run)
                window = toks[i:i + n]
                if len(window) == n and all(
                    w.is_word and w.lemma == part for w, part in zip(window, run)
                ):
                    matched = run
                    break
            if matched:
                n = len(matched)
                hits.append(Trigger(
                    lemma=" ".join(matched),
                    char_span=(toks[i].char_span[0], toks[i + n - 1].char_span[1]),
                    token_indices=tuple(range(i, i + n)),
                ))
                consumed.update(range(i, i + n))
                i += n
                continue
            if tok.lemma in self.ontology.trigger_index and i not in consumed:
                hits.append(Trigger(tok.lemma, tok.char_span, (i,)))
            i += 1
        return hits

    def select_trigger(self, tokens: TokenSeq) -> Trigger | None:
        """Widest-scope heuristic: longest multiword, then verbal, then leftmost."""
        hits = self.find_triggers(tokens)
        if not hits:
            return None

        def is_verbal(t: Trigger) -> bool:
            return any(
                self.ontology.frames[fid].pos == "v"
                for fid in self.ontology.lookup_triggers(t.lemma)
            )

        def key(t: Trigger):
            return (-len(t.token_indices), 0 if is_verbal(t) else 1, t.char_span[0])

        return min(hits, key=key)

    def rank_frames(self, tokens: TokenSeq, trigger: Trigger,
                    k: int | None = None) -> list[tuple[str, float]]:
        candidates = self.ontology.lookup_triggers(trigger.lemma)
        if not candidates:
            raise NoCandidates(trigger.lemma)
        sent = sentence_embedding(self.store, [t.surface for t in tokens if t.is_word])
        scored = []
        for fid in candidates:
            emb = self._frame_embeddings[fid]
            if emb.excluded:
                continue
            scored.append((fid, cosine(sent, emb.vector)))
        scored.sort(key=lambda pair: (-pair[1], pair[0]))
        return scored[:(k or self.config.k)]

    def detect_spans(self, tokens: TokenSeq, trigger: Trigger) -> list[tuple[int, int]]:
        return self.span_detector.detect(tokens, trigger)

    def role_type_vector(self, frame_id: str, role_name: str) -> np.ndarray:
        """Mean sentence embedding over the role's example fillers."""
        key = (frame_id, role_name)
        if key in self._role_vectors:
            return self._role_vectors[key]
        spec = next(
            (r for r in self.ontology.resolve_roles(frame_id) if r.name == role_name),
            None,
        )
        total = self.store.zero()
        count = 0
        if spec is not None:
            for filler in spec.example_fillers:
                vec = sentence_embedding(
                    self.store, [t.surface for t in tokenize(filler) if t.is_word]
                )
                if np.linalg.norm(vec) > 0:
                    total = total + vec / np.linalg.norm(vec)
                    count += 1
        vec = total / count if count else total
        self._role_vectors[key] = vec
        return vec

    def assign_roles(self, frame_id: str, spans: list[tuple[int, int]],
                     text: str) -> dict[str, tuple[int, int]]:
        """Greedy best-pair-first assignment above the similarity floor.

        Exact ties break on role name, then span position, so the result
        is order-independent of the input span list.
        """
        if frame_id not in self.ontology.frames:
            raise UnknownFrame(frame_id)
        roles = [
            r for r in self.ontology.resolve_roles(frame_id)
            if r.kind is not RoleKind.FOCAL
        ]
        floor = self.config.role_similarity_floor
        pairs = []
        for role in roles:
            rvec = self.role_type_vector(frame_id, role.name)
            for span in spans:
                svec = sentence_embedding(
                    self.store,
                    [t.surface for t in tokenize(text[span[0]:span[1]]) if t.is_word],
                )
                score = cosine(svec, rvec)
                if score >= floor:
                    pairs.append((score, role.name, span))
        pairs.sort(key=lambda p: (-p[0], p[1], p[2][0]))
        assigned: dict[str, tuple[int, int]] = {}
        used_spans: set[tuple[int, int]] = set()
        for score, role_name, span in pairs:
            if role_name in assigned or span in used_spans:
                continue
            assigned[role_name] = span
            used_spans.add(span)
        return assigned

    # --- entry points -------------------------------------------------------

    def knn_parse(self, text: str, k: int | None = None) -> list[FrameInterpretation]:
        tokens = self.analyze(text)
        trigger = self.select_trigger(tokens)
        if trigger is None:
            return []
        ranked = self.rank_frames(tokens, trigger, k)
        spans = self.detect_spans(tokens, trigger)
        out = []
        for fid, score in ranked:
            bindings = self.assign_roles(fid, spans, text)
            focal = self.ontology.focal_role(fid).name
            bindings = {focal: trigger.char_span, **bindings}
            out.append(FrameInterpretation(
                frame_id=fid,
                trigger_span=trigger.char_span,
                role_bindings=bindings,
                # cosine in [-1,1] mapped affinely into [0,1], preserving order
                confidence=(score + 1.0) / 2.0,
                source="knn",
            ))
        return out

    def parse(self, text: str, k: int | None = None) -> list[FrameInterpretation]:
        """External parser when available and confident, else kNN fallback."""
        if self.external is not None:
            try:
                results = self.external.interpret(text)
            except Exception as e:  # degraded mode, never fatal
                log.warning("external parser unavailable: %s", e)
                results = []
            if results and max(r.confidence for r in results) >= self.config.low_confidence_threshold:
                return results
        return self.knn_parse(text, k)

    def record_correction(self, text: str, chosen: FrameInterpretation,
                          alternatives: list[str]) -> CorrectionRecord:
        rejected = [fid for fid in alternatives if fid != chosen.frame_id]
        record = CorrectionRecord(text=text, chosen=chosen, rejected=rejected)
        if self.training_log is not None:
            self.training_log.append(record)
        return record


def ingest_corrections(ontology: Ontology, log: TrainingLog) -> Ontology:
    """Fold logged corrections back into the ontology as frame examples."""
    from .ontology import FrameExample

    extra: dict[str, list[FrameExample]] = {}
    for rec in log.records():
        fid = rec.get("frame")
        if fid not in ontology.frames:
            continue
        focal = ontology.focal_role(fid).name
        roles = {
            name: (span[0], span[1])
            for name, span in rec.get("roles", {}).items()
            if name != focal
        }
        extra.setdefault(fid, []).append(FrameExample(
            text=rec["text"],
            trigger=tuple(rec["trigger"]),
            roles=roles,
        ))
    return ontology.with_extra_examples(extra) if extra else ontology
