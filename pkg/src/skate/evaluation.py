"""Recognizer evaluation against a hand-annotated corpus.

Accuracy is top-1 frame match; span F1 requires exact character offsets
with the correct role label (strict by design: no partial credit).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import ParseError
from .recognizer import Recognizer


@dataclass
class EvalReport:
    frame_top1_accuracy: float
    span_f1: float
    span_precision: float
    span_recall: float
    sentences: int
    confusion: dict[str, dict[str, int]] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "sentences": self.sentences,
            "frame_top1_accuracy": round(self.frame_top1_accuracy, 4),
            "span_f1": round(self.span_f1, 4),
            "span_precision": round(self.span_precision, 4),
            "span_recall": round(self.span_recall, 4),
            "confusion": {
                gold: dict(sorted(row.items())) for gold, row in sorted(self.confusion.items())
            },
        }


def load_eval_corpus(raw: str | bytes) -> list[dict]:
    if isinstance(raw, bytes):
        raw = raw.decode("utf-8")
    records = []
    for lineno, line in enumerate(raw.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as e:
            raise ParseError(f"bad corpus record: {e.msg}", line=lineno) from None
        for key in ("frame", "text", "trigger"):
            if key not in rec:
                raise ParseError(f"corpus record missing {key!r}", line=lineno)
        records.append(rec)
    if not records:
        raise ParseError("evaluation corpus is empty")
    return records


def evaluate(recognizer: Recognizer, records: list[dict]) -> EvalReport:
    correct = 0
    tp = fp = fn = 0
    confusion: dict[str, dict[str, int]] = {}
    for rec in records:
        gold_frame = rec["frame"]
        gold_roles = {
            name: tuple(span) for name, span in rec.get("roles", {}).items()
        }
        interps = recognizer.parse(rec["text"])
        predicted_frame = interps[0].frame_id if interps else None
        row = confusion.setdefault(gold_frame, {})
        row[predicted_frame or "<none>"] = row.get(predicted_frame or "<none>", 0) + 1
        if predicted_frame == gold_frame:
            correct += 1
        predicted_roles: dict[str, tuple[int, int]] = {}
        if interps:
            focal = None
            if predicted_frame in recognizer.ontology.frames:
                focal = recognizer.ontology.focal_role(predicted_frame).name
            predicted_roles = {
                name: span for name, span in interps[0].role_bindings.items()
                if name != focal
            }
        # role-labelled exact span match; a wrong frame makes every
        # prediction a miss by construction
        for name, span in predicted_roles.items():
            if predicted_frame == gold_frame and gold_roles.get(name) == span:
                tp += 1
            else:
                fp += 1
        for name, span in gold_roles.items():
            if not (predicted_frame == gold_frame and predicted_roles.get(name) == span):
                fn += 1
    precision = tp / (tp + fp) if (tp + fp) else 0.0
    recall = tp / (tp + fn) if (tp + fn) else 0.0
    f1 = 2 * precision * recall / (precision + recall) if (precision + recall) else 0.0
    return EvalReport(
        frame_top1_accuracy=correct / len(records),
        span_f1=f1,
        span_precision=precision,
        span_recall=recall,
        sentences=len(records),
        confusion=confusion,
    )
