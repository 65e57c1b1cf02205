"""Frame ontology: load, validate, and query.

Frames form an acyclic multiple-inheritance hierarchy. Each frame names
a concept, a trigger lexicon, and roles; exactly one role of kind
"focal" must be reachable for every frame. The ontology is immutable
after load, so concurrent readers are safe; reloading builds a fresh
instance.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import IO, Iterable

from .errors import ParseError, UnknownFrame, ValidationError


class RoleKind(str, Enum):
    FOCAL = "focal"
    REQUIRED = "required"
    OPTIONAL = "optional"


@dataclass(frozen=True)
class RoleSpec:
    name: str
    kind: RoleKind
    type_hint: str | None = None
    example_fillers: tuple[str, ...] = ()


@dataclass(frozen=True)
class FrameExample:
    """An annotated sentence: trigger span plus role spans, half-open offsets."""

    text: str
    trigger: tuple[int, int]
    roles: dict[str, tuple[int, int]] = field(default_factory=dict)


@dataclass(frozen=True)
class FrameDef:
    id: str
    gloss: str
    trigger_lemmas: tuple[str, ...]
    roles: tuple[RoleSpec, ...] = ()
    parents: tuple[str, ...] = ()
    examples: tuple[FrameExample, ...] = ()
    pos: str | None = None  # coarse part of speech of the trigger: "v", "n", "a"


class Ontology:
    """Validated frame collection with a prebuilt trigger index."""

    def __init__(self, frames: Iterable[FrameDef]):
        self.frames: dict[str, FrameDef] = {}
        for f in frames:
            if f.id in self.frames:
                raise ValidationError(f"duplicate frame id: {f.id}", subject=f.id)
            self.frames[f.id] = f
        self._validate_hierarchy()
        self._roles_cache: dict[str, tuple[RoleSpec, ...]] = {}
        for fid in self.frames:
            roles = self.resolve_roles(fid)
            focal = [r for r in roles if r.kind is RoleKind.FOCAL]
            if len(focal) != 1:
                raise ValidationError(
                    f"frame {fid} resolves to {len(focal)} focal roles, expected exactly 1",
                    subject=fid,
                )
        self._validate_examples()
        self.trigger_index: dict[str, frozenset[str]] = self._build_trigger_index()
        # multiword triggers grouped by first lemma, longest first
        self.multiword_triggers: dict[str, list[tuple[str, ...]]] = {}
        for lemma in self.trigger_index:
            parts = tuple(lemma.split())
            if len(parts) > 1:
                self.multiword_triggers.setdefault(parts[0], []).append(parts)
        for runs in self.multiword_triggers.values():
            runs.sort(key=len, reverse=True)

    # --- construction helpers ------------------------------------------

    def _validate_hierarchy(self) -> None:
        for f in self.frames.values():
            for p in f.parents:
                if p not in self.frames:
                    raise ValidationError(
                        f"frame {f.id} names unknown parent {p}", subject=f.id
                    )
        # cycle detection: iterative DFS with colors
        WHITE, GRAY, BLACK = 0, 1, 2
        color = {fid: WHITE for fid in self.frames}

        def visit(start: str) -> None:
            stack: list[tuple[str, int]] = [(start, 0)]
            color[start] = GRAY
            while stack:
                fid, idx = stack[-1]
                parents = self.frames[fid].parents
                if idx < len(parents):
                    stack[-1] = (fid, idx + 1)
                    p = parents[idx]
                    if color[p] == GRAY:
                        raise ValidationError(
                            f"inheritance cycle through {p}", subject=p
                        )
                    if color[p] == WHITE:
                        color[p] = GRAY
                        stack.append((p, 0))
                else:
                    color[fid] = BLACK
                    stack.pop()

        for fid in self.frames:
            if color[fid] == WHITE:
                visit(fid)

    def _validate_examples(self) -> None:
        for f in self.frames.values():
            known = {r.name for r in self.resolve_roles(f.id)}
            for ex in f.examples:
                n = len(ex.text)
                spans = [ex.trigger, *ex.roles.values()]
                for s, e in spans:
                    if not (0 <= s <= e <= n):
                        raise ValidationError(
                            f"frame {f.id}: span [{s},{e}) outside example text",
                            subject=f.id,
                        )
                for rname in ex.roles:
                    if rname not in known:
                        raise ValidationError(
                            f"frame {f.id}: example annotates unknown role {rname}",
                            subject=f.id,
                        )

    def _build_trigger_index(self) -> dict[str, frozenset[str]]:
        index: dict[str, set[str]] = {}
        for f in self.frames.values():
            for lemma in f.trigger_lemmas:
                index.setdefault(lemma.lower(), set()).add(f.id)
        return {k: frozenset(v) for k, v in index.items()}

    # --- queries --------------------------------------------------------

    def frame(self, frame_id: str) -> FrameDef:
        try:
            return self.frames[frame_id]
        except KeyError:
            raise UnknownFrame(frame_id) from None

    def resolve_roles(self, frame_id: str) -> tuple[RoleSpec, ...]:
        """Own roles first, then ancestors depth-first in parent order.

        A child role shadows any same-named ancestor role; duplicates
        from diamond inheritance collapse to the first occurrence.
        """
        if frame_id in self._roles_cache:
            return self._roles_cache[frame_id]
        frame = self.frame(frame_id)
        out: list[RoleSpec] = []
        seen: set[str] = set()
        visited_frames: set[str] = set()

        def walk(fid: str) -> None:
            if fid in visited_frames:
                return
            visited_frames.add(fid)
            f = self.frames[fid]
            for role in f.roles:
                if role.name in seen and fid == frame_id:
                    raise ValidationError(
                        f"frame {fid} declares role {role.name} twice", subject=fid
                    )
                if role.name not in seen:
                    seen.add(role.name)
                    out.append(role)
            for p in f.parents:
                walk(p)

        walk(frame_id)
        resolved = tuple(out)
        self._roles_cache[frame_id] = resolved
        return resolved

    def focal_role(self, frame_id: str) -> RoleSpec:
        for r in self.resolve_roles(frame_id):
            if r.kind is RoleKind.FOCAL:
                return r
        raise ValidationError(f"frame {frame_id} has no focal role", subject=frame_id)

    def subsumes(self, ancestor: str, descendant: str) -> bool:
        """True iff `ancestor` is reachable from `descendant` via parents (reflexive)."""
        self.frame(ancestor)
        self.frame(descendant)
        if ancestor == descendant:
            return True
        stack = list(self.frames[descendant].parents)
        seen: set[str] = set()
        while stack:
            fid = stack.pop()
            if fid == ancestor:
                return True
            if fid in seen:
                continue
            seen.add(fid)
            stack.extend(self.frames[fid].parents)
        return False

    def lookup_triggers(self, lemma: str) -> frozenset[str]:
        return self.trigger_index.get(lemma.lower(), frozenset())

    def with_extra_examples(self, extra: dict[str, list[FrameExample]]) -> "Ontology":
        """New ontology with `extra` examples appended to the named frames."""
        frames = []
        for f in self.frames.values():
            more = extra.get(f.id)
            if more:
                f = FrameDef(
                    id=f.id, gloss=f.gloss, trigger_lemmas=f.trigger_lemmas,
                    roles=f.roles, parents=f.parents,
                    examples=f.examples + tuple(more), pos=f.pos,
                )
            frames.append(f)
        return Ontology(frames)


# --- serialization ----------------------------------------------------------

def _parse_span(value, where: str) -> tuple[int, int]:
    if (not isinstance(value, (list, tuple)) or len(value) != 2
            or not all(isinstance(x, int) for x in value)):
        raise ParseError(f"bad span {value!r}", record=where)
    return (value[0], value[1])


def _frame_from_dict(obj: dict, where: str) -> FrameDef:
    try:
        fid = obj["id"]
        roles = []
        for r in obj.get("roles", []):
            roles.append(RoleSpec(
                name=r["name"],
                kind=RoleKind(r.get("kind", "optional")),
                type_hint=r.get("type_hint"),
                example_fillers=tuple(r.get("examples", [])),
            ))
        examples = []
        for ex in obj.get("examples", []):
            examples.append(FrameExample(
                text=ex["text"],
                trigger=_parse_span(ex["trigger"], where),
                roles={k: _parse_span(v, where) for k, v in ex.get("roles", {}).items()},
            ))
        return FrameDef(
            id=fid,
            gloss=obj.get("gloss", ""),
            trigger_lemmas=tuple(t.lower() for t in obj.get("triggers", [])),
            roles=tuple(roles),
            parents=tuple(obj.get("parents", [])),
            examples=tuple(examples),
            pos=obj.get("pos"),
        )
    except KeyError as e:
        raise ParseError(f"missing field {e.args[0]}", record=where) from None
    except ValueError as e:
        raise ParseError(str(e), record=where) from None


def load_ontology(source: IO[bytes] | IO[str] | str | bytes) -> Ontology:
    """Parse and validate an ontology document (JSON, UTF-8)."""
    if hasattr(source, "read"):
        raw = source.read()
    else:
        raw = source
    if isinstance(raw, bytes):
        raw = raw.decode("utf-8")
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", line=e.lineno) from None
    if not isinstance(doc, dict) or "frames" not in doc:
        raise ParseError("top-level object must contain a 'frames' array")
    frames = []
    for i, obj in enumerate(doc["frames"]):
        where = obj.get("id", f"#{i}") if isinstance(obj, dict) else f"#{i}"
        if not isinstance(obj, dict):
            raise ParseError("frame entry must be an object", record=where)
        frames.append(_frame_from_dict(obj, where))
    return Ontology(frames)


def serialize_ontology(ontology: Ontology) -> str:
    """Inverse of load_ontology; load(serialize(o)) equals o field-wise."""
    frames = []
    for f in ontology.frames.values():
        obj: dict = {
            "id": f.id,
            "gloss": f.gloss,
            "triggers": list(f.trigger_lemmas),
            "parents": list(f.parents),
            "roles": [
                {
                    "name": r.name,
                    "kind": r.kind.value,
                    "type_hint": r.type_hint,
                    "examples": list(r.example_fillers),
                }
                for r in f.roles
            ],
            "examples": [
                {
                    "text": ex.text,
                    "trigger": list(ex.trigger),
                    "roles": {k: list(v) for k, v in ex.roles.items()},
                }
                for ex in f.examples
            ],
        }
        if f.pos is not None:
            obj["pos"] = f.pos
        frames.append(obj)
    return json.dumps({"frames": frames}, indent=2, ensure_ascii=False)
