"""Policy-diagram engine: states, rules, dated world facts, forward
chaining with calendar counters, and compliance queries.

Inference is stratified: observable facts feed intermediate-state
facts, which feed compliance states. Compliance states are terminal, so
chaining always reaches a fixpoint regardless of rule order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import date as Date, timedelta

from .converter import Atom, HornRule, Term, parse_duration_days
from .errors import (
    DanglingState, NonGroundFact, NonTerminalCompliance, UnknownState,
    ValidationError,
)
from .ontology import Ontology


@dataclass(frozen=True)
class StateDef:
    id: str
    kind: str  # "compliance" | "intermediate"
    frame_id: str  # predicate that evokes the state
    atoms: tuple = ()
    default_duration_days: int | None = None
    default_population: str | None = None
    is_default: bool = False

    def to_dict(self) -> dict:
        adjuncts: dict = {}
        if self.default_duration_days is not None:
            adjuncts["duration_days"] = self.default_duration_days
        if self.default_population is not None:
            adjuncts["population"] = self.default_population
        out: dict = {"id": self.id, "kind": self.kind, "frame": self.frame_id,
                     "default_adjuncts": adjuncts}
        if self.is_default:
            out["default"] = True
        return out

    @staticmethod
    def from_dict(obj: dict) -> "StateDef":
        adjuncts = obj.get("default_adjuncts", {})
        frame = obj.get("frame")
        atoms = tuple(Atom.from_dict(a) for a in obj.get("atoms", []))
        if frame is None:
            if not atoms:
                raise ValidationError(f"state {obj.get('id')} has no evoking frame")
            frame = atoms[0].predicate
        return StateDef(
            id=obj["id"],
            kind=obj.get("kind", "intermediate"),
            frame_id=frame,
            atoms=atoms,
            default_duration_days=adjuncts.get("duration_days"),
            default_population=adjuncts.get("population"),
            is_default=bool(obj.get("default", False)),
        )


@dataclass(frozen=True)
class GroundFact:
    predicate: str
    args: tuple[tuple[str, str], ...]  # sorted (role, constant) pairs
    date: Date

    @staticmethod
    def make(predicate: str, args: dict[str, str], when: Date) -> "GroundFact":
        return GroundFact(predicate, tuple(sorted(args.items())), when)

    def arg_map(self) -> dict[str, str]:
        return dict(self.args)

    def to_dict(self) -> dict:
        return {"pred": self.predicate, "args": self.arg_map(),
                "date": self.date.isoformat()}


def fact_from_atom(atom: Atom, when: Date) -> GroundFact:
    args: dict[str, str] = {}
    for role, term in atom.args.items():
        if term.kind == "constant":
            args[role] = term.symbol or ""
        else:
            raise NonGroundFact(
                f"fact atom {atom.predicate} carries non-constant arg {role}"
            )
    if atom.negated:
        raise NonGroundFact("negated atoms cannot be asserted as facts")
    return GroundFact.make(atom.predicate, args, when)


@dataclass(frozen=True)
class PolicyRule:
    antecedents: tuple[Atom, ...]
    consequent: Atom
    target_state: str | None  # state id, or None for fact-level rules
    duration_override: int | None = None
    population_override: str | None = None
    provenance: str = ""


@dataclass(frozen=True)
class PersonStatus:
    person: str
    state: str
    start_date: Date | None
    end_date: Date | None
    duration_days: int | None = None
    population: str | None = None

    def days_remaining(self, asof: Date) -> int:
        if self.end_date is None:
            return 0
        return max(0, (self.end_date - asof).days)

    def to_dict(self, asof: Date) -> dict:
        return {
            "person": self.person,
            "state": self.state,
            "start": self.start_date.isoformat() if self.start_date else None,
            "end": self.end_date.isoformat() if self.end_date else None,
            "days_remaining": self.days_remaining(asof),
            "population": self.population,
        }


class PolicyGraph:
    """Immutable compiled policy: states plus classified rules."""

    def __init__(self, states: list[StateDef], rules: list[PolicyRule]):
        self.states: dict[str, StateDef] = {s.id: s for s in states}
        self.rules = tuple(rules)
        self.fact_rules = tuple(r for r in rules if r.target_state is None)
        self.state_rules = tuple(r for r in rules if r.target_state is not None)
        self.default_state: StateDef | None = next(
            (s for s in states if s.is_default and s.kind == "compliance"), None
        )

    def compliance_states(self) -> list[StateDef]:
        return [s for s in self.states.values() if s.kind == "compliance"]

    def nodes(self) -> list[str]:
        """Diagram nodes: states plus the observable predicates feeding them."""
        state_frames = {s.frame_id for s in self.states.values()}
        out = set(self.states)
        for rule in self.rules:
            for atom in [*rule.antecedents, rule.consequent]:
                if atom.predicate not in state_frames and atom.predicate not in self.states:
                    out.add(atom.predicate)
        return sorted(out)

    def to_dict(self) -> dict:
        return {
            "states": [s.to_dict() for s in self.states.values()],
            "rules": [
                {
                    "antecedents": [a.to_dict() for a in r.antecedents],
                    "consequent": r.consequent.to_dict(),
                    "target_state": r.target_state,
                }
                for r in self.rules
            ],
        }


def build_policy(rules: list[HornRule], state_defs: list[StateDef],
                 ontology: Ontology | None = None,
                 extra_predicates: set[str] | None = None) -> PolicyGraph:
    """Compile converter rules plus state definitions into a policy graph.

    Every predicate must resolve to a defined state, a known frame, or an
    entry in `extra_predicates` (DanglingState otherwise), and no rule
    may chain out of a compliance state (NonTerminalCompliance).
    """
    states: dict[str, StateDef] = {}
    frame_to_state: dict[str, StateDef] = {}
    for sd in state_defs:
        if sd.id in states:
            raise ValidationError(f"duplicate state id {sd.id}")
        states[sd.id] = sd
        frame_to_state[sd.frame_id] = sd
        frame_to_state.setdefault(sd.id, sd)

    def resolve_pred(pred: str) -> StateDef | None:
        if pred in states:
            return states[pred]
        return frame_to_state.get(pred)

    def known(pred: str) -> bool:
        if resolve_pred(pred) is not None:
            return True
        if extra_predicates and pred in extra_predicates:
            return True
        if ontology is not None and pred in ontology.frames:
            return True
        return False

    compiled: list[PolicyRule] = []
    for rule in rules:
        for atom in [*rule.antecedents, rule.consequent]:
            if atom.negated:
                raise ValidationError(
                    "negated atoms are not supported in policy rules"
                )
            if not known(atom.predicate):
                raise DanglingState(atom.predicate)
        for atom in rule.antecedents:
            sd = resolve_pred(atom.predicate)
            if sd is not None and sd.kind == "compliance":
                raise NonTerminalCompliance(
                    f"compliance state {sd.id} cannot appear in antecedents"
                )
        target = resolve_pred(rule.consequent.predicate)
        duration = None
        population = None
        if target is not None and target.kind == "compliance":
            dur_term = rule.consequent.args.get("duration")
            if dur_term is not None and dur_term.kind == "constant" and dur_term.symbol:
                duration = parse_duration_days(dur_term.symbol)
            pop_term = rule.consequent.args.get("population")
            if pop_term is not None and pop_term.kind == "constant":
                population = pop_term.symbol
            compiled.append(PolicyRule(
                antecedents=tuple(rule.antecedents),
                consequent=rule.consequent,
                target_state=target.id,
                duration_override=duration,
                population_override=population,
                provenance=rule.provenance,
            ))
        else:
            # intermediate-state and plain-fact rules both derive facts
            compiled.append(PolicyRule(
                antecedents=tuple(rule.antecedents),
                consequent=rule.consequent,
                target_state=None,
                provenance=rule.provenance,
            ))
    return PolicyGraph(list(states.values()), compiled)


class WorldState:
    """Versioned fact store; asserts build a new version."""

    def __init__(self, facts: tuple[GroundFact, ...] = (), version: int = 0):
        self.facts = facts
        self.version = version

    def to_dict(self) -> dict:
        return {"version": self.version,
                "facts": [f.to_dict() for f in self.facts]}


def assert_facts(graph: PolicyGraph, world: WorldState,
                 facts: list[GroundFact]) -> WorldState:
    """New world version with `facts` added and fact-level rules (for
    example co-location to contact) applied eagerly."""
    combined = list(world.facts)
    seen = set(combined)
    for f in facts:
        if f not in seen:
            combined.append(f)
            seen.add(f)
    closed = _fact_closure(graph, combined)
    return WorldState(tuple(closed), version=world.version + 1)


# --- matching ----------------------------------------------------------------

def _match_atom(atom: Atom, fact: GroundFact,
                binding: dict[str, str]) -> dict[str, str] | None:
    if atom.predicate != fact.predicate:
        return None
    fargs = fact.arg_map()
    new = dict(binding)
    for role, term in atom.args.items():
        if role not in fargs:
            return None
        value = fargs[role]
        if term.kind == "constant":
            if term.symbol != value:
                return None
        else:  # variable or placeholder: unify on variable name
            name = term.name or "_"
            if name in new and new[name] != value:
                return None
            new[name] = value
    return new


def _rule_matches(rule: PolicyRule, facts: list[GroundFact]):
    """Yield (binding, max_date) for every way the antecedents match."""

    def rec(i: int, binding: dict[str, str], latest: Date | None):
        if i == len(rule.antecedents):
            yield binding, latest
            return
        atom = rule.antecedents[i]
        for fact in facts:
            nb = _match_atom(atom, fact, binding)
            if nb is not None:
                nd = fact.date if latest is None or fact.date > latest else latest
                yield from rec(i + 1, nb, nd)

    if rule.antecedents:
        yield from rec(0, {}, None)


def _resolve_term(term: Term, binding: dict[str, str]) -> str | None:
    if term.kind == "constant":
        return term.symbol
    return binding.get(term.name or "")


def _fact_closure(graph: PolicyGraph, facts: list[GroundFact]) -> list[GroundFact]:
    known = list(facts)
    index = set(known)
    changed = True
    while changed:
        changed = False
        for rule in graph.fact_rules:
            for binding, latest in _rule_matches(rule, known):
                args = {}
                ok = True
                for role, term in rule.consequent.args.items():
                    value = _resolve_term(term, binding)
                    if value is None:
                        ok = False
                        break
                    args[role] = value
                if not ok or latest is None:
                    continue
                derived = GroundFact.make(rule.consequent.predicate, args, latest)
                if derived not in index:
                    index.add(derived)
                    known.append(derived)
                    changed = True
    return known


def infer(graph: PolicyGraph, world: WorldState, asof: Date) -> list[PersonStatus]:
    """Forward chain to fixpoint and report one status per person.

    A person deriving several compliance states keeps the one with the
    latest end date (ties broken by state id, then start date). `asof`
    only parameterizes the day counters; the fact set is the whole world.
    """
    facts = _fact_closure(graph, list(world.facts))
    statuses: list[PersonStatus] = []
    for rule in graph.state_rules:
        state = graph.states[rule.target_state]
        for binding, latest in _rule_matches(rule, facts):
            person = None
            pterm = rule.consequent.args.get("person")
            if pterm is not None:
                person = _resolve_term(pterm, binding)
            if person is None or latest is None:
                continue
            duration = rule.duration_override
            if duration is None:
                duration = state.default_duration_days
            population = rule.population_override or state.default_population
            end = latest + timedelta(days=duration) if duration is not None else latest
            statuses.append(PersonStatus(
                person=person,
                state=state.id,
                start_date=latest,
                end_date=end,
                duration_days=duration,
                population=population,
            ))
    best: dict[str, PersonStatus] = {}
    for status in statuses:
        prev = best.get(status.person)
        if prev is None or _status_rank(status) > _status_rank(prev):
            best[status.person] = status
    return sorted(best.values(), key=lambda s: s.person)


def _status_rank(status: PersonStatus):
    return (status.end_date or Date.min, status.state,
            status.start_date or Date.min)


def known_persons(graph: PolicyGraph, world: WorldState) -> set[str]:
    facts = _fact_closure(graph, list(world.facts))
    persons = set()
    for f in facts:
        value = f.arg_map().get("person")
        if value:
            persons.add(value)
    return persons


@dataclass
class QueryReport:
    asof: Date
    statuses: list[PersonStatus]
    state_filter: str | None = None

    def to_dict(self) -> dict:
        return {
            "asof": self.asof.isoformat(),
            "filter": self.state_filter,
            "statuses": [s.to_dict(self.asof) for s in self.statuses],
        }


def query(graph: PolicyGraph, world: WorldState, asof: Date,
          state_filter: str | None = None) -> QueryReport:
    if state_filter is not None and state_filter not in graph.states:
        raise UnknownState(state_filter)
    statuses = infer(graph, world, asof)
    covered = {s.person for s in statuses}
    if graph.default_state is not None:
        for person in sorted(known_persons(graph, world) - covered):
            statuses.append(PersonStatus(
                person=person, state=graph.default_state.id,
                start_date=None, end_date=None,
            ))
    statuses.sort(key=lambda s: s.person)
    if state_filter is not None:
        statuses = [s for s in statuses if s.state == state_filter]
    return QueryReport(asof=asof, statuses=statuses, state_filter=state_filter)


# --- serialization -----------------------------------------------------------

def load_policy_doc(raw: str | bytes) -> tuple[list[StateDef], list[HornRule]]:
    if isinstance(raw, bytes):
        raw = raw.decode("utf-8")
    doc = json.loads(raw)
    states = [StateDef.from_dict(s) for s in doc.get("states", [])]
    rules = [HornRule.from_dict(r) for r in doc.get("rules", [])]
    return states, rules


def load_facts_doc(raw: str | bytes) -> list[GroundFact]:
    if isinstance(raw, bytes):
        raw = raw.decode("utf-8")
    return load_facts_doc_body(json.loads(raw))


def load_facts_doc_body(doc: dict) -> list[GroundFact]:
    out = []
    for item in doc.get("facts", []):
        args = item.get("args", {})
        if any(not isinstance(v, str) for v in args.values()):
            raise NonGroundFact(f"fact args must be constants: {item!r}")
        out.append(GroundFact.make(
            item["pred"], args, Date.fromisoformat(item["date"])
        ))
    return out
