import random
from datetime import date as Date, timedelta

import pytest

from skate.converter import Atom, HornRule, Term
from skate.engine import default_policy_fixture
from skate.errors import (
    DanglingState, NonGroundFact, NonTerminalCompliance, UnknownState,
)
from skate.policy import (
    GroundFact, PolicyGraph, StateDef, WorldState, assert_facts, build_policy,
    fact_from_atom, infer, load_facts_doc, load_policy_doc, query,
)

from oracle_policy import closure_keys, random_scenario, simulate

D = Date.fromisoformat


def covid_graph(ontology) -> PolicyGraph:
    states, rules = load_policy_doc(default_policy_fixture())
    return build_policy(rules, states, ontology)


def person_fact(pred, person, when):
    return GroundFact.make(pred, {"person": person}, D(when))


# --- build -----------------------------------------------------------------

def test_build_fixture_policy(ontology):
    graph = covid_graph(ontology)
    assert set(graph.states) == {"quarantining", "returning", "symptomatic", "exposed"}
    assert len(graph.state_rules) == 2
    assert len(graph.fact_rules) == 3
    assert graph.default_state.id == "returning"


def test_build_dangling_state(ontology):
    rule = HornRule(
        antecedents=[Atom("symptomatic", {"person": Term.variable("x")})],
        consequent=Atom("vacationing", {"person": Term.variable("x")}),
    )
    states = [StateDef(id="symptomatic", kind="intermediate", frame_id="symptomatic")]
    with pytest.raises(DanglingState):
        build_policy([rule], states, ontology=None)


def test_build_nonterminal_compliance(ontology):
    states = [
        StateDef(id="quarantine", kind="compliance", frame_id="quarantining"),
        StateDef(id="symptomatic", kind="intermediate", frame_id="symptomatic"),
    ]
    rule = HornRule(
        antecedents=[Atom("quarantining", {"person": Term.variable("x")})],
        consequent=Atom("symptomatic", {"person": Term.variable("x")}),
    )
    with pytest.raises(NonTerminalCompliance):
        build_policy([rule], states, ontology)


def test_fact_from_atom_rejects_variables():
    atom = Atom("symptomatic", {"person": Term.variable("x")})
    with pytest.raises(NonGroundFact):
        fact_from_atom(atom, D("2021-09-01"))


# --- assert_facts -----------------------------------------------------------

def test_assert_colocation_derives_symmetric_contact(ontology):
    graph = covid_graph(ontology)
    world = assert_facts(graph, WorldState(), [
        GroundFact.make("co-location", {"person": "mary", "companion": "bobby"},
                        D("2021-09-02")),
    ])
    preds = {(f.predicate, f.arg_map().get("person"), f.arg_map().get("other"))
             for f in world.facts}
    assert ("contact", "mary", "bobby") in preds
    assert ("contact", "bobby", "mary") in preds
    assert world.version == 1


def test_assert_empty_keeps_world(ontology):
    graph = covid_graph(ontology)
    w0 = WorldState()
    w1 = assert_facts(graph, w0, [])
    assert w1.facts == ()
    assert w1.version == 1  # version bumps are the write marker


def test_worlds_are_versioned_snapshots(ontology):
    graph = covid_graph(ontology)
    w1 = assert_facts(graph, WorldState(), [person_fact("symptomatic", "a", "2021-09-01")])
    w2 = assert_facts(graph, w1, [person_fact("symptomatic", "b", "2021-09-02")])
    assert len(w1.facts) < len(w2.facts)
    assert (w1.version, w2.version) == (1, 2)


# --- infer / query ------------------------------------------------------------

def test_symptomatic_14_day_quarantine(ontology):
    graph = covid_graph(ontology)
    world = assert_facts(graph, WorldState(),
                         [person_fact("symptomatic", "bobby", "2021-09-04")])
    statuses = infer(graph, world, D("2021-09-04"))
    assert len(statuses) == 1
    st = statuses[0]
    assert st.person == "bobby"
    assert st.state == "quarantining"
    assert st.start_date == D("2021-09-04")
    assert st.end_date == D("2021-09-18")
    assert st.days_remaining(D("2021-09-04")) == 14


def test_exposed_two_days_prior_has_three_left(ontology):
    graph = covid_graph(ontology)
    world = assert_facts(graph, WorldState(),
                         [person_fact("exposed", "mary", "2021-09-02")])
    statuses = infer(graph, world, D("2021-09-04"))
    assert statuses[0].days_remaining(D("2021-09-04")) == 3


def test_day_convention_worked_example(ontology):
    # symptomatic 2021-09-04 with 14-day duration: end 2021-09-18, and
    # 10 days remain as of 2021-09-08 (checked by the day-stepper too)
    graph = covid_graph(ontology)
    world = assert_facts(graph, WorldState(),
                         [person_fact("symptomatic", "p", "2021-09-04")])
    st = infer(graph, world, D("2021-09-08"))[0]
    assert st.end_date == D("2021-09-18")
    assert st.days_remaining(D("2021-09-08")) == 10
    sim = simulate(graph, world, D("2021-09-08"))
    assert sim["p"]["end"] == D("2021-09-18")
    assert sim["p"]["days_remaining"] == 10


def test_contact_chain_derives_exposure(ontology):
    graph = covid_graph(ontology)
    world = assert_facts(graph, WorldState(), [
        person_fact("symptomatic", "bobby", "2021-09-04"),
        GroundFact.make("co-location", {"person": "mary", "companion": "bobby"},
                        D("2021-09-02")),
    ])
    statuses = {s.person: s for s in infer(graph, world, D("2021-09-04"))}
    assert statuses["mary"].state == "quarantining"
    # exposure completes when the later support (symptomatic) arrives
    assert statuses["mary"].start_date == D("2021-09-04")


def test_overlapping_quarantines_latest_end_wins(ontology):
    graph = covid_graph(ontology)
    world = assert_facts(graph, WorldState(), [
        person_fact("exposed", "p", "2021-09-01"),       # 5 days -> ends 09-06
        person_fact("symptomatic", "p", "2021-09-03"),   # 14 days -> ends 09-17
    ])
    st = infer(graph, world, D("2021-09-03"))
    assert len(st) == 1
    assert st[0].end_date == D("2021-09-17")


def test_query_default_state_for_statusless_person(ontology):
    graph = covid_graph(ontology)
    world = assert_facts(graph, WorldState(), [
        person_fact("symptomatic", "bobby", "2021-09-04"),
        GroundFact.make("testing", {"person": "alice", "result": "negative"},
                        D("2021-09-01")),
    ])
    report = query(graph, world, D("2021-09-04"))
    by_person = {s.person: s for s in report.statuses}
    assert by_person["alice"].state == "returning"
    assert by_person["alice"].days_remaining(D("2021-09-04")) == 0


def test_query_filter(ontology):
    graph = covid_graph(ontology)
    world = assert_facts(graph, WorldState(),
                         [person_fact("symptomatic", "bobby", "2021-09-04")])
    report = query(graph, world, D("2021-09-05"), "quarantining")
    assert [s.person for s in report.statuses] == ["bobby"]
    with pytest.raises(UnknownState):
        query(graph, world, D("2021-09-05"), "nonexistent")


def test_query_empty_world(ontology):
    graph = covid_graph(ontology)
    report = query(graph, WorldState(), D("2021-09-05"))
    assert report.statuses == []


def test_days_remaining_monotone(ontology):
    graph = covid_graph(ontology)
    world = assert_facts(graph, WorldState(),
                         [person_fact("symptomatic", "p", "2021-09-04")])
    previous = None
    for offset in range(0, 25):
        asof = D("2021-09-01") + timedelta(days=offset)
        st = infer(graph, world, asof)[0]
        remaining = st.days_remaining(asof)
        if previous is not None:
            assert remaining <= previous
        previous = remaining


def test_infer_confluent_under_rule_shuffles(ontology):
    states, rules = load_policy_doc(default_policy_fixture())
    facts = [
        person_fact("symptomatic", "bobby", "2021-09-04"),
        GroundFact.make("co-location", {"person": "mary", "companion": "bobby"},
                        D("2021-09-02")),
        person_fact("exposed", "zed", "2021-09-01"),
    ]
    rng = random.Random(13)
    reference = None
    for _ in range(12):
        shuffled = rules[:]
        rng.shuffle(shuffled)
        graph = build_policy(shuffled, states, ontology)
        world = assert_facts(graph, WorldState(), facts)
        result = [
            (s.person, s.state, s.start_date, s.end_date)
            for s in infer(graph, world, D("2021-09-04"))
        ]
        if reference is None:
            reference = result
        assert result == reference


# --- oracle equivalence -------------------------------------------------------

def assert_matches_oracle(graph, world, asof):
    got = {s.person: s for s in infer(graph, world, asof)}
    expected = simulate(graph, world, asof)
    assert set(got) == set(expected)
    for person, exp in expected.items():
        st = got[person]
        assert st.state == exp["state"], person
        assert st.start_date == exp["start"], person
        assert st.end_date == exp["end"], person
        assert st.days_remaining(asof) == exp["days_remaining"], person


def test_fixture_scenario_matches_oracle(ontology):
    graph = covid_graph(ontology)
    world = assert_facts(graph, WorldState(), [
        person_fact("symptomatic", "bobby", "2021-09-04"),
        person_fact("exposed", "mary", "2021-09-02"),
        GroundFact.make("co-location", {"person": "anna", "companion": "bobby"},
                        D("2021-09-03")),
    ])
    for asof in ("2021-09-02", "2021-09-04", "2021-09-10", "2021-10-01"):
        assert_matches_oracle(graph, world, D(asof))


def test_randomized_scenarios_match_oracle():
    rng = random.Random(4242)
    for _case in range(40):
        states, rules, facts, extra, base = random_scenario(rng)
        graph = build_policy(rules, states, extra_predicates=extra)
        world = assert_facts(graph, WorldState(), facts)
        for _ in range(3):
            asof = base + timedelta(days=rng.randint(0, 35))
            assert_matches_oracle(graph, world, asof)
        # contact symmetry holds in the derived closure
        keys = closure_keys(graph, world)
        for pred, args in keys:
            if pred == "contact":
                amap = dict(args)
                flipped = ("contact", tuple(sorted({
                    "person": amap["other"], "other": amap["person"]
                }.items())))
                assert flipped in keys


# --- serialization ----------------------------------------------------------------

def test_load_facts_doc():
    facts = load_facts_doc(
        '{"facts":[{"pred":"symptomatic","args":{"person":"bobby"},'
        '"date":"2021-09-04"}]}'
    )
    assert facts[0].predicate == "symptomatic"
    assert facts[0].date == D("2021-09-04")


def test_load_facts_doc_rejects_non_strings():
    with pytest.raises(NonGroundFact):
        load_facts_doc('{"facts":[{"pred":"p","args":{"x":1},"date":"2021-09-04"}]}')


def test_graph_to_dict_round_trips_states(ontology):
    graph = covid_graph(ontology)
    doc = graph.to_dict()
    assert {s["id"] for s in doc["states"]} == set(graph.states)
    assert len(doc["rules"]) == len(graph.rules)


def test_fixture_graph_has_six_nodes(ontology):
    # four states plus the two observable predicates feeding them
    graph = covid_graph(ontology)
    assert graph.nodes() == [
        "co-location", "contact", "exposed", "quarantining",
        "returning", "symptomatic",
    ]
