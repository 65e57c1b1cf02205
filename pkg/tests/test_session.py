import pytest

from skate.errors import (
    BadPath, IncompleteEntry, OptionNotOffered, RequiredSlot, SessionClosed,
    UnknownTemplate,
)
from skate.session import (
    BUILTIN_TEMPLATES, Construction, SlotStatus, open_session, replay_session,
    start_session,
)

COOKIE = "The child takes the cookie from the jar"


def test_start_if_then(engine):
    s = start_session(engine, "if-then")
    names = [sl.name for sl in s.root.slots]
    assert names == ["if", "and", "then"]
    assert s.root.slot("if").required
    assert not s.root.slot("and").required
    assert s.focus == ("if",)
    assert s.status == "editing"


def test_after_then_semantics():
    spec = BUILTIN_TEMPLATES["after-then"]
    assert spec.construction_semantics is Construction.TEMPORAL_SEQUENCE


def test_unknown_template(engine):
    with pytest.raises(UnknownTemplate):
        start_session(engine, "nope")


def test_input_text_builds_options(engine):
    s = open_session(engine, "statement")
    options = s.input_text("statement", COOKIE)
    assert [o.frame_id for o in options][0] == "taking"
    assert all(o.gloss for o in options)
    assert all(o.example for o in options)
    slot = s.root.slot("statement")
    assert slot.status is SlotStatus.PENDING_DIALOGUE
    assert slot.text == COOKIE


def test_input_text_no_triggers_stays_unstructured(engine):
    s = open_session(engine, "statement")
    options = s.input_text("statement", "asdf qwer")
    assert options == []
    assert s.root.slot("statement").status is SlotStatus.UNSTRUCTURED


def test_input_text_get_senses(engine):
    s = open_session(engine, "if-then")
    options = s.input_text("if", "a player gets")
    assert {o.frame_id for o in options} == {
        "arriving-at-a-location", "acquire", "transition-to-state"
    }


def test_input_text_bad_path(engine):
    s = open_session(engine, "statement")
    with pytest.raises(BadPath):
        s.input_text("nope", "text")


def test_choose_sense_fills_slots(engine):
    s = open_session(engine, "statement")
    s.input_text("statement", COOKIE)
    inst = s.choose_sense("statement", "taking")
    filled = {sl.name: sl.text for sl in inst.slots}
    assert filled == {"agent": "The child", "theme": "the cookie",
                      "source": "from the jar"}
    assert all(sl.status is SlotStatus.UNSTRUCTURED for sl in inst.slots)


def test_choose_sense_required_blank(engine):
    s = open_session(engine, "if-then")
    s.input_text("if", "a player gets")
    inst = s.choose_sense("if", "arriving-at-a-location")
    dest = inst.slot("destination")
    assert dest is not None
    assert dest.required
    assert dest.status is SlotStatus.EMPTY
    # focus jumps to the blank
    assert s.focus == ("if", "destination")


def test_choose_sense_not_offered(engine):
    s = open_session(engine, "statement")
    s.input_text("statement", COOKIE)
    with pytest.raises(OptionNotOffered):
        s.choose_sense("statement", "thanking")


def test_choose_sense_emits_correction(engine, tmp_path):
    from skate.recognizer import Recognizer, TrainingLog
    from skate.engine import Engine

    log = TrainingLog(tmp_path / "log.ndjson")
    r = Recognizer(engine.ontology, engine.store, engine.recognizer.config,
                   training_log=log)
    e2 = Engine(engine.ontology, engine.store, r, engine.suggester)
    s = open_session(e2, "statement")
    s.input_text("statement", COOKIE)
    s.choose_sense("statement", "taking")
    assert len(log.records()) == 1
    assert log.records()[0]["frame"] == "taking"


def test_refine_unstructured_slot(engine):
    s = open_session(engine, "statement")
    s.input_text("statement", COOKIE)
    s.choose_sense("statement", "taking")
    options = s.refine_slot("statement.theme")
    assert [o.frame_id for o in options] == ["food"]
    s.choose_sense("statement.theme", "food")
    inst = s.root.slot("statement").instance.slot("theme").instance
    assert inst.frame_id == "food"
    assert inst.slots == []  # entity frame has no extra roles


def test_refine_structured_slot_is_bad_path(engine):
    s = open_session(engine, "statement")
    s.input_text("statement", COOKIE)
    s.choose_sense("statement", "taking")
    s.refine_slot("statement.theme")
    s.choose_sense("statement.theme", "food")
    with pytest.raises(BadPath):
        s.refine_slot("statement.theme")


def test_leave_unstructured_marks_final(engine):
    s = open_session(engine, "statement")
    s.input_text("statement", COOKIE)
    s.choose_sense("statement", "taking")
    s.refine_slot("statement.theme")  # pending again
    s.leave_unstructured("statement.theme")
    slot = s.root.slot("statement").instance.slot("theme")
    assert slot.status is SlotStatus.UNSTRUCTURED
    assert slot.final
    assert slot.text == "the cookie"


def test_context_suggests_optional_role(engine):
    # "The team wins" evokes prize-like context, so the unbound optional
    # prize role appears as a deletable slot
    s = open_session(engine, "statement")
    s.input_text("statement", "The girl wins")
    s.choose_sense("statement", "winning")
    inst = s.root.slot("statement").instance
    prize = inst.slot("prize")
    assert prize is not None and prize.suggested
    assert prize.status is SlotStatus.EMPTY and not prize.required


def test_delete_optional_slot_and_re_add(engine):
    s = open_session(engine, "statement")
    s.input_text("statement", "The girl wins")
    s.choose_sense("statement", "winning")
    inst = s.root.slot("statement").instance

    def functional_state():
        # the "suggested by context" marker is display provenance, not state
        out = []
        for sl in inst.slots:
            d = sl.state_dict()
            d.pop("suggested", None)
            out.append(d)
        return out

    order_before = [sl.name for sl in inst.slots]
    state_before = functional_state()
    s.delete_optional_slot("statement.prize")
    assert inst.slot("prize") is None
    s.add_optional_slot("statement", "prize")
    assert [sl.name for sl in inst.slots] == order_before
    assert functional_state() == state_before


def test_delete_required_slot_refused(engine):
    s = open_session(engine, "if-then")
    s.input_text("if", "a player gets")
    s.choose_sense("if", "arriving-at-a-location")
    with pytest.raises(RequiredSlot):
        s.delete_optional_slot("if.destination")


def test_submit_incomplete_lists_paths(engine):
    s = open_session(engine, "if-then")
    s.input_text("if", "a player gets")
    s.choose_sense("if", "arriving-at-a-location")
    with pytest.raises(IncompleteEntry) as exc:
        s.submit()
    assert "if.destination" in exc.value.paths
    assert "then" in exc.value.paths


def test_submit_allows_unstructured_fillers(engine):
    s = open_session(engine, "statement")
    s.input_text("statement", COOKIE)
    s.choose_sense("statement", "taking")
    root = s.submit()
    assert s.status == "submitted"
    assert root.slot("statement").instance.frame_id == "taking"


def test_submitted_session_is_immutable(engine):
    s = open_session(engine, "statement")
    s.input_text("statement", COOKIE)
    s.choose_sense("statement", "taking")
    s.submit()
    with pytest.raises(SessionClosed):
        s.input_text("statement", "other text")


def test_pending_required_slot_blocks_submit(engine):
    s = open_session(engine, "statement")
    s.input_text("statement", COOKIE)  # pending dialogue on required slot
    with pytest.raises(IncompleteEntry):
        s.submit()


def test_option_frames_traceable_to_triggers(engine):
    # every offered option must be producible by lookup_triggers on some
    # lemma of the slot text
    s = open_session(engine, "statement")
    options = s.input_text("statement", COOKIE)
    lemmas = {t.lemma for t in engine.recognizer.analyze(COOKIE) if t.is_word}
    producible = set()
    for lemma in lemmas:
        producible |= engine.ontology.lookup_triggers(lemma)
    assert {o.frame_id for o in options} <= producible


def test_no_instance_is_its_own_ancestor(engine):
    s = open_session(engine, "statement")
    s.input_text("statement", COOKIE)
    s.choose_sense("statement", "taking")
    s.refine_slot("statement.theme")
    s.choose_sense("statement.theme", "food")
    seen = set()

    def walk(inst):
        assert id(inst) not in seen
        seen.add(id(inst))
        for sl in inst.slots:
            if sl.instance is not None:
                walk(sl.instance)

    walk(s.root)


# --- event sourcing -----------------------------------------------------------

def flow_events(engine):
    s = open_session(engine, "statement")
    s.input_text("statement", COOKIE)
    s.choose_sense("statement", "taking")
    s.refine_slot("statement.theme")
    s.leave_unstructured("statement.theme")
    s.submit()
    return s


def test_replay_reconstructs_state(engine):
    original = flow_events(engine)
    replayed = replay_session(engine, original.events)
    assert replayed.state_dict() == original.state_dict()
    assert replayed.id == original.id
    assert replayed.seq == original.seq


def test_replay_does_not_append_corrections(engine, tmp_path):
    from skate.recognizer import Recognizer, TrainingLog
    from skate.engine import Engine

    log = TrainingLog(tmp_path / "log.ndjson")
    r = Recognizer(engine.ontology, engine.store, engine.recognizer.config,
                   training_log=log)
    e2 = Engine(engine.ontology, engine.store, r, engine.suggester)
    original = flow_events(e2)
    count_after_live = len(log.records())
    replay_session(e2, original.events)
    assert len(log.records()) == count_after_live


def test_event_log_schema(engine):
    s = flow_events(engine)
    for i, event in enumerate(s.events):
        assert set(event) == {"session", "seq", "op", "args", "ts"}
        assert event["session"] == s.id
        assert event["seq"] == i + 1


def test_session_ids_unguessable(engine):
    a = open_session(engine, "statement")
    b = open_session(engine, "statement")
    assert a.id != b.id
    assert len(a.id) >= 32  # at least 128 bits of hex


def test_event_log_ndjson_round_trip(engine):
    from skate.session import dump_events, load_events

    original = flow_events(engine)
    raw = dump_events(original)
    events = load_events(raw)
    assert events == original.events
    replayed = replay_session(engine, events)
    assert replayed.state_dict() == original.state_dict()
