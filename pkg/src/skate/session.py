"""Interactive entry sessions: top-level templates, micro-dialogues,
recursive slot refinement, and submission.

Sessions are event-sourced: every mutating operation appends an event
carrying only the user's input, and replaying the log against the same
immutable stores reconstructs the exact state. Correction records are
emitted only on live operations, never during replay.
"""

from __future__ import annotations

import time
import uuid
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .embedding import sentence_embedding
from .errors import (
    BadPath, IncompleteEntry, OptionNotOffered, RequiredSlot, SessionClosed,
    UnknownTemplate,
)
from .ontology import RoleKind
from .recognizer import FrameInterpretation
from .tokens import tokenize

Path = tuple[str, ...]


def parse_path(raw: str) -> Path:
    return tuple(p for p in raw.split(".") if p) if raw else ()


def format_path(path: Path) -> str:
    return ".".join(path)


class Construction(str, Enum):
    CAUSAL_RULE = "causal_rule"
    TEMPORAL_SEQUENCE = "temporal_sequence"
    STATEMENT = "statement"
    POLICY_STATE_DEF = "policy_state_def"
    POLICY_BRANCH = "policy_branch"
    WORLD_FACT = "world_fact"


@dataclass(frozen=True)
class SlotSpec:
    name: str
    kind: str = "text"  # "text" | "structured"
    required: bool = True
    prefix: str = ""  # surface scaffold preceding the slot, e.g. "If"


@dataclass(frozen=True)
class TemplateSpec:
    id: str
    label: str
    slots: tuple[SlotSpec, ...]
    construction_semantics: Construction
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.slots:
            raise ValueError("template needs at least one slot")
        names = [s.name for s in self.slots]
        if len(names) != len(set(names)):
            raise ValueError("slot names must be unique")


BUILTIN_TEMPLATES: dict[str, TemplateSpec] = {
    t.id: t
    for t in [
        TemplateSpec(
            id="if-then", label="If/Then",
            slots=(
                SlotSpec("if", prefix="If"),
                SlotSpec("and", required=False, prefix="and"),
                SlotSpec("then", prefix="then"),
            ),
            construction_semantics=Construction.CAUSAL_RULE,
        ),
        TemplateSpec(
            id="after-then", label="After/Then",
            slots=(
                SlotSpec("after", prefix="After"),
                SlotSpec("then", prefix="then"),
            ),
            construction_semantics=Construction.TEMPORAL_SEQUENCE,
        ),
        TemplateSpec(
            id="statement", label="Statement",
            slots=(SlotSpec("statement"),),
            construction_semantics=Construction.STATEMENT,
        ),
        TemplateSpec(
            id="compliance-state", label="Compliance state",
            slots=(
                SlotSpec("name", prefix="State"),
                SlotSpec("definition", prefix="holds when"),
                SlotSpec("duration", required=False, prefix="lasting"),
                SlotSpec("population", required=False, prefix="applying to"),
            ),
            construction_semantics=Construction.POLICY_STATE_DEF,
            metadata={"state_kind": "compliance"},
        ),
        TemplateSpec(
            id="intermediate-state", label="Intermediate state",
            slots=(
                SlotSpec("name", prefix="State"),
                SlotSpec("definition", prefix="holds when"),
            ),
            construction_semantics=Construction.POLICY_STATE_DEF,
            metadata={"state_kind": "intermediate"},
        ),
        TemplateSpec(
            id="policy-branch", label="Policy branch",
            slots=(
                SlotSpec("if", prefix="If"),
                SlotSpec("and", required=False, prefix="and"),
                SlotSpec("then", prefix="then"),
            ),
            construction_semantics=Construction.POLICY_BRANCH,
        ),
        TemplateSpec(
            id="world-fact", label="World fact",
            slots=(
                SlotSpec("fact", prefix="Observed"),
                SlotSpec("date", prefix="on"),
            ),
            construction_semantics=Construction.WORLD_FACT,
        ),
    ]
}


@dataclass(frozen=True)
class SenseOption:
    frame_id: str
    gloss: str
    example: str

    def to_dict(self) -> dict:
        return {"frame": self.frame_id, "gloss": self.gloss, "example": self.example}


class SlotStatus(str, Enum):
    EMPTY = "empty"
    UNSTRUCTURED = "unstructured"
    PENDING_DIALOGUE = "pending_dialogue"
    STRUCTURED = "structured"


@dataclass
class Slot:
    name: str
    required: bool
    kind: str = "text"
    status: SlotStatus = SlotStatus.EMPTY
    text: str | None = None
    options: list[SenseOption] = field(default_factory=list)
    interpretations: list[FrameInterpretation] = field(default_factory=list)
    instance: "TemplateInstance | None" = None
    final: bool = False
    suggested: bool = False  # added by context suggestion, deletable

    def state_dict(self) -> dict:
        out: dict = {
            "name": self.name,
            "required": self.required,
            "status": self.status.value,
        }
        if self.text is not None:
            out["text"] = self.text
        if self.status is SlotStatus.PENDING_DIALOGUE:
            out["options"] = [o.to_dict() for o in self.options]
        if self.instance is not None:
            out["instance"] = self.instance.state_dict()
        if self.final:
            out["final"] = True
        if self.suggested:
            out["suggested"] = True
        return out


@dataclass
class TemplateInstance:
    frame_id: str  # frame id, or template spec id at the root
    trigger_text: str
    slots: list[Slot]
    source_text: str | None = None
    origin: FrameInterpretation | None = None

    def slot(self, name: str) -> Slot | None:
        for s in self.slots:
            if s.name == name:
                return s
        return None

    def state_dict(self) -> dict:
        return {
            "frame": self.frame_id,
            "trigger": self.trigger_text,
            "slots": [s.state_dict() for s in self.slots],
        }


class Session:
    """One user entry; all mutations go through apply() so the event log
    is the single source of truth."""

    def __init__(self, engine, spec: TemplateSpec, session_id: str | None = None):
        self.engine = engine
        self.spec = spec
        self.id = session_id or uuid.uuid4().hex + uuid.uuid4().hex[:8]
        self.root = TemplateInstance(
            frame_id=spec.id,
            trigger_text=spec.label,
            slots=[Slot(name=s.name, required=s.required, kind=s.kind) for s in spec.slots],
        )
        self.focus: Path = (spec.slots[0].name,)
        self.status = "editing"
        self.events: list[dict] = []
        self.seq = 0

    # --- path navigation --------------------------------------------------

    def _resolve(self, path: Path) -> tuple[TemplateInstance, Slot]:
        if not path:
            raise BadPath("empty path")
        inst = self.root
        for i, name in enumerate(path):
            slot = inst.slot(name)
            if slot is None:
                raise BadPath(format_path(path[: i + 1]))
            if i == len(path) - 1:
                return inst, slot
            if slot.instance is None:
                raise BadPath(format_path(path[: i + 1]))
            inst = slot.instance
        raise BadPath(format_path(path))  # unreachable

    def resolve_instance(self, path: Path) -> TemplateInstance:
        if not path:
            return self.root
        _, slot = self._resolve(path)
        if slot.instance is None:
            raise BadPath(format_path(path))
        return slot.instance

    def walk(self):
        """Yield (path, slot) over the whole tree, pre-order."""

        def rec(inst: TemplateInstance, prefix: Path):
            for slot in inst.slots:
                path = prefix + (slot.name,)
                yield path, slot
                if slot.instance is not None:
                    yield from rec(slot.instance, path)

        yield from rec(self.root, ())

    # --- event machinery ----------------------------------------------------

    def apply(self, op: str, args: dict, *, replaying: bool = False):
        if self.status != "editing" and op != "noop":
            raise SessionClosed(self.id)
        handler = getattr(self, f"_op_{op}", None)
        if handler is None:
            raise BadPath(f"unknown operation {op}")
        result = handler(args, replaying=replaying)
        self.seq += 1
        self.events.append({
            "session": self.id,
            "seq": self.seq,
            "op": op,
            "args": args,
            "ts": time.time(),
        })
        return result

    def _recompute_focus(self, preferred: Path | None = None) -> None:
        if preferred is not None:
            try:
                self._resolve(preferred)
                self.focus = preferred
                return
            except BadPath:
                pass
        for path, slot in self.walk():
            if slot.required and slot.status in (SlotStatus.EMPTY, SlotStatus.PENDING_DIALOGUE):
                self.focus = path
                return
        for path, _slot in self.walk():
            self.focus = path
            return

    # --- operations -----------------------------------------------------------

    def _op_input_text(self, args: dict, *, replaying: bool) -> list[SenseOption]:
        path = parse_path(args["path"])
        _, slot = self._resolve(path)
        if slot.status is SlotStatus.STRUCTURED:
            raise BadPath(f"slot {format_path(path)} already structured")
        text = args["text"]
        slot.text = text
        slot.final = False
        interps = self.engine.recognizer.parse(text)
        slot.interpretations = interps
        slot.options = self._build_options(interps)
        slot.status = SlotStatus.PENDING_DIALOGUE if slot.options else SlotStatus.UNSTRUCTURED
        self._recompute_focus(path)
        return slot.options

    def _build_options(self, interps: list[FrameInterpretation]) -> list[SenseOption]:
        options: list[SenseOption] = []
        seen: set[str] = set()
        for interp in interps:
            if interp.frame_id in seen:
                continue
            seen.add(interp.frame_id)
            frame = self.engine.ontology.frames.get(interp.frame_id)
            if frame is None:
                continue
            example = frame.examples[0].text if frame.examples else ""
            if not example:
                for role in frame.roles:
                    if role.example_fillers:
                        example = f"... {role.example_fillers[0]} ..."
                        break
            options.append(SenseOption(interp.frame_id, frame.gloss, example))
        return options

    def _op_choose_sense(self, args: dict, *, replaying: bool) -> TemplateInstance:
        path = parse_path(args["path"])
        _, slot = self._resolve(path)
        if slot.status is not SlotStatus.PENDING_DIALOGUE:
            raise BadPath(f"slot {format_path(path)} has no pending dialogue")
        frame_id = args["frame"]
        if frame_id not in {o.frame_id for o in slot.options}:
            raise OptionNotOffered(frame_id)
        interp = next(i for i in slot.interpretations if i.frame_id == frame_id)
        instance = self._instantiate(frame_id, interp, slot.text or "")
        slot.instance = instance
        slot.status = SlotStatus.STRUCTURED
        if not replaying:
            self.engine.recognizer.record_correction(
                slot.text or "", interp, [o.frame_id for o in slot.options]
            )
        slot.options = []
        slot.interpretations = []
        self._recompute_focus()
        return instance

    def _instantiate(self, frame_id: str, interp: FrameInterpretation,
                     text: str) -> TemplateInstance:
        ontology = self.engine.ontology
        focal = ontology.focal_role(frame_id).name
        trigger_text = text[interp.trigger_span[0]:interp.trigger_span[1]]
        sent_vec = sentence_embedding(
            self.engine.store, [t.surface for t in tokenize(text) if t.is_word]
        )
        slots: list[Slot] = []
        for role in ontology.resolve_roles(frame_id):
            if role.kind is RoleKind.FOCAL:
                continue
            bound = interp.role_bindings.get(role.name)
            if bound is not None and role.name != focal:
                slots.append(Slot(
                    name=role.name,
                    required=role.kind is RoleKind.REQUIRED,
                    status=SlotStatus.UNSTRUCTURED,
                    text=text[bound[0]:bound[1]],
                ))
            elif role.kind is RoleKind.REQUIRED:
                slots.append(Slot(name=role.name, required=True))
            else:
                # context suggestion: offer the optional role when its type
                # vector resembles the typed text
                from .embedding import cosine

                rvec = self.engine.recognizer.role_type_vector(frame_id, role.name)
                if (np.linalg.norm(rvec) > 0
                        and cosine(rvec, sent_vec) > self.engine.recognizer.config.role_similarity_floor):
                    slots.append(Slot(name=role.name, required=False, suggested=True))
        return TemplateInstance(
            frame_id=frame_id,
            trigger_text=trigger_text,
            slots=slots,
            source_text=text,
            origin=interp,
        )

    def _op_refine(self, args: dict, *, replaying: bool) -> list[SenseOption]:
        path = parse_path(args["path"])
        _, slot = self._resolve(path)
        if slot.status is not SlotStatus.UNSTRUCTURED:
            raise BadPath(f"slot {format_path(path)} is not unstructured text")
        interps = self.engine.recognizer.parse(slot.text or "")
        slot.interpretations = interps
        slot.options = self._build_options(interps)
        if slot.options:
            slot.status = SlotStatus.PENDING_DIALOGUE
            slot.final = False
        self._recompute_focus(path)
        return slot.options

    def _op_leave(self, args: dict, *, replaying: bool) -> None:
        path = parse_path(args["path"])
        _, slot = self._resolve(path)
        if slot.status not in (SlotStatus.UNSTRUCTURED, SlotStatus.PENDING_DIALOGUE):
            raise BadPath(f"slot {format_path(path)} holds no text to keep")
        slot.status = SlotStatus.UNSTRUCTURED
        slot.options = []
        slot.interpretations = []
        slot.final = True
        self._recompute_focus()

    def _op_delete_slot(self, args: dict, *, replaying: bool) -> None:
        path = parse_path(args["path"])
        parent, slot = self._resolve(path)
        if slot.required:
            raise RequiredSlot(format_path(path))
        parent.slots.remove(slot)
        self._recompute_focus()

    def _op_add_slot(self, args: dict, *, replaying: bool) -> Slot:
        inst_path = parse_path(args.get("instance", ""))
        role_name = args["role"]
        inst = self.resolve_instance(inst_path)
        if inst.slot(role_name) is not None:
            raise BadPath(f"slot {role_name} already present")
        if inst is self.root:
            specs = {s.name: s for s in self.spec.slots}
            if role_name not in specs:
                raise BadPath(role_name)
            spec = specs[role_name]
            if spec.required:
                raise RequiredSlot(role_name)
            new = Slot(name=role_name, required=False, kind=spec.kind)
            order = [s.name for s in self.spec.slots]
        else:
            roles = {
                r.name: r for r in self.engine.ontology.resolve_roles(inst.frame_id)
                if r.kind is not RoleKind.FOCAL
            }
            if role_name not in roles:
                raise BadPath(role_name)
            if roles[role_name].kind is RoleKind.REQUIRED:
                raise RequiredSlot(role_name)
            new = Slot(name=role_name, required=False)
            order = list(roles)
        inst.slots.append(new)
        inst.slots.sort(key=lambda s: order.index(s.name) if s.name in order else len(order))
        self._recompute_focus(parse_path(args.get("instance", "")) + (role_name,))
        return new

    def _op_submit(self, args: dict, *, replaying: bool) -> TemplateInstance:
        missing = [
            format_path(path)
            for path, slot in self.walk()
            if slot.required and slot.status in (SlotStatus.EMPTY, SlotStatus.PENDING_DIALOGUE)
        ]
        if missing:
            raise IncompleteEntry(missing)
        self.status = "submitted"
        return self.root

    # --- public API ------------------------------------------------------------

    def input_text(self, path: str, text: str) -> list[SenseOption]:
        return self.apply("input_text", {"path": path, "text": text})

    def choose_sense(self, path: str, frame_id: str) -> TemplateInstance:
        return self.apply("choose_sense", {"path": path, "frame": frame_id})

    def refine_slot(self, path: str) -> list[SenseOption]:
        return self.apply("refine", {"path": path})

    def leave_unstructured(self, path: str) -> None:
        return self.apply("leave", {"path": path})

    def delete_optional_slot(self, path: str) -> None:
        return self.apply("delete_slot", {"path": path})

    def add_optional_slot(self, instance_path: str, role: str) -> Slot:
        return self.apply("add_slot", {"instance": instance_path, "role": role})

    def submit(self) -> TemplateInstance:
        return self.apply("submit", {})

    # --- state inspection --------------------------------------------------------

    def state_dict(self) -> dict:
        return {
            "session": self.id,
            "template": self.spec.id,
            "status": self.status,
            "focus": format_path(self.focus),
            "root": self.root.state_dict(),
            "seq": self.seq,
        }


def start_session(engine, spec_id: str, session_id: str | None = None,
                  templates: dict[str, TemplateSpec] | None = None) -> Session:
    registry = templates or BUILTIN_TEMPLATES
    if spec_id not in registry:
        raise UnknownTemplate(spec_id)
    return Session(engine, registry[spec_id], session_id)


def replay_session(engine, events: list[dict],
                   templates: dict[str, TemplateSpec] | None = None) -> Session:
    """Rebuild a session from its event log against the same stores."""
    if not events:
        raise ValueError("empty event log")
    first = events[0]
    if first["op"] != "start":
        raise ValueError("event log must begin with a start event")
    session = start_session(
        engine, first["args"]["template"], session_id=first["session"],
        templates=templates,
    )
    session.seq = first["seq"]
    session.events.append(dict(first))
    for event in events[1:]:
        session.apply(event["op"], event["args"], replaying=True)
    return session


def open_session(engine, spec_id: str, session_id: str | None = None,
                 templates: dict[str, TemplateSpec] | None = None) -> Session:
    """start_session plus the synthetic `start` event for replayability."""
    session = start_session(engine, spec_id, session_id, templates)
    session.seq = 1
    session.events.append({
        "session": session.id,
        "seq": 1,
        "op": "start",
        "args": {"template": spec_id},
        "ts": time.time(),
    })
    return session


def dump_events(session: Session) -> str:
    """Event log as newline-delimited JSON for persistence."""
    import json

    return "".join(json.dumps(e, sort_keys=True) + "\n" for e in session.events)


def load_events(raw: str | bytes) -> list[dict]:
    import json

    if isinstance(raw, bytes):
        raw = raw.decode("utf-8")
    return [json.loads(line) for line in raw.splitlines() if line.strip()]
