"""Lower submitted frame trees into Horn-clause-like statements.

Unstructured slot text becomes a placeholder variable; identical
phrases (after determiner stripping) unify to one variable within an
entry. Statement and world-fact entries ground their placeholders to
constants instead, since facts must be variable-free.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .errors import MultipleConsequents, ValidationError
from .ontology import Ontology, RoleKind
from .session import Construction, Session, Slot, SlotStatus, TemplateInstance, TemplateSpec
from .tokens import lemmatize, tokenize

# Predicates produced by the converter itself rather than by a frame.
BUILTIN_PREDICATES: dict[str, tuple[str, ...]] = {
    "gt": ("left", "right"),
    "lt": ("left", "right"),
    "eq": ("left", "right"),
    "before": ("earlier", "later"),
    "utterance": ("content",),
}

# Comparison frames lower to builtin predicates with positional roles.
COMPARISON_FRAMES = {"greater-than": "gt", "less-than": "lt", "equal-to": "eq"}

# Roles grounded to constants even inside rules: calendar/population
# adjuncts are parameters, not entities to quantify over.
ADJUNCT_ROLES = frozenset({"duration", "population"})

_DETERMINERS = ("the", "a", "an", "this", "that", "these", "those", "his",
                "her", "their", "its", "some")
_LEADING_PREPS = ("to", "from", "into", "onto", "with", "for", "at", "in",
                  "on", "of", "by", "about")


def normalize_phrase(text: str) -> str:
    """Unification key: lowercase, squeeze spaces, strip leading
    preposition and determiners."""
    words = re.sub(r"[^\w\s']", " ", text.lower()).split()
    if words and words[0] in _LEADING_PREPS:
        words = words[1:]
    while words and words[0] in _DETERMINERS:
        words = words[1:]
    return " ".join(words)


@dataclass(frozen=True)
class Term:
    kind: str  # "variable" | "constant" | "text"
    name: str | None = None  # variable name
    symbol: str | None = None  # constant symbol
    text: str | None = None  # raw source for placeholders
    type_hint: str | None = None

    @staticmethod
    def variable(name: str, type_hint: str | None = None) -> "Term":
        return Term(kind="variable", name=name, type_hint=type_hint)

    @staticmethod
    def constant(symbol: str) -> "Term":
        return Term(kind="constant", symbol=symbol)

    @staticmethod
    def placeholder(raw: str, var_name: str) -> "Term":
        return Term(kind="text", name=var_name, text=raw)

    def to_dict(self) -> dict:
        if self.kind == "variable":
            out: dict = {"var": self.name}
            if self.type_hint:
                out["type"] = self.type_hint
            return out
        if self.kind == "constant":
            return {"const": self.symbol}
        return {"text": self.text, "var": self.name}

    @staticmethod
    def from_dict(obj: dict) -> "Term":
        if "const" in obj:
            return Term.constant(obj["const"])
        if "text" in obj:
            return Term.placeholder(obj["text"], obj["var"])
        if "var" in obj:
            return Term.variable(obj["var"], obj.get("type"))
        raise ValidationError(f"unrecognized term {obj!r}")


@dataclass
class Atom:
    predicate: str
    args: dict[str, Term] = field(default_factory=dict)
    negated: bool = False

    def to_dict(self) -> dict:
        out: dict = {
            "pred": self.predicate,
            "args": {role: term.to_dict() for role, term in self.args.items()},
        }
        if self.negated:
            out["negated"] = True
        return out

    @staticmethod
    def from_dict(obj: dict) -> "Atom":
        return Atom(
            predicate=obj["pred"],
            args={role: Term.from_dict(t) for role, t in obj.get("args", {}).items()},
            negated=bool(obj.get("negated", False)),
        )


@dataclass
class HornRule:
    antecedents: list[Atom]
    consequent: Atom
    modality: str = "always"  # "always" | "often"
    provenance: str = ""

    @property
    def is_fact(self) -> bool:
        return not self.antecedents

    def to_dict(self) -> dict:
        return {
            "modality": self.modality,
            "antecedents": [a.to_dict() for a in self.antecedents],
            "consequent": self.consequent.to_dict(),
            "provenance": self.provenance,
        }

    @staticmethod
    def from_dict(obj: dict) -> "HornRule":
        return HornRule(
            antecedents=[Atom.from_dict(a) for a in obj.get("antecedents", [])],
            consequent=Atom.from_dict(obj["consequent"]),
            modality=obj.get("modality", "always"),
            provenance=obj.get("provenance", ""),
        )


class VarEnv:
    """Fresh-variable allocator with phrase unification."""

    def __init__(self):
        self._by_key: dict[str, str] = {}
        self._counter = 0

    def fresh(self) -> str:
        self._counter += 1
        return f"v{self._counter}"

    def var_for(self, text: str) -> str:
        key = normalize_phrase(text)
        if not key:
            key = text.strip().lower() or "_blank"
        if key not in self._by_key:
            self._by_key[key] = self.fresh()
        return self._by_key[key]


@dataclass
class StateDefEntry:
    """A policy state authored through a state-definition template."""

    id: str
    kind: str  # "compliance" | "intermediate"
    atoms: list[Atom]
    duration_days: int | None = None
    population: str | None = None

    def to_dict(self) -> dict:
        adjuncts: dict = {}
        if self.duration_days is not None:
            adjuncts["duration_days"] = self.duration_days
        if self.population is not None:
            adjuncts["population"] = self.population
        return {
            "id": self.id,
            "kind": self.kind,
            "atoms": [a.to_dict() for a in self.atoms],
            "default_adjuncts": adjuncts,
        }


@dataclass
class FactEntry:
    """A dated ground observation authored through the world-fact template."""

    atoms: list[Atom]
    date: str  # ISO calendar date

    def to_dict(self) -> dict:
        return {"atoms": [a.to_dict() for a in self.atoms], "date": self.date}


@dataclass
class ConvertedEntry:
    kind: str  # "rules" | "state_def" | "facts"
    rules: list[HornRule] = field(default_factory=list)
    state_def: StateDefEntry | None = None
    facts: list[FactEntry] = field(default_factory=list)


def parse_duration_days(text: str) -> int | None:
    m = re.search(r"(\d+)\s*day", text)
    if m:
        return int(m.group(1))
    m = re.search(r"(\d+)\s*week", text)
    if m:
        return int(m.group(1)) * 7
    if re.search(r"\ba week\b", text):
        return 7
    m = re.search(r"(\d+)", text)
    return int(m.group(1)) if m else None


def _trigger_constant(trigger_text: str) -> str:
    return " ".join(lemmatize(t.surface) for t in tokenize(trigger_text) if t.is_word)


def _detect_negation(instance: TemplateInstance) -> bool:
    if instance.source_text is None or instance.origin is None:
        return False
    from .recognizer import NEGATORS

    start = instance.origin.trigger_span[0]
    for tok in tokenize(instance.source_text):
        if tok.char_span[0] >= start:
            break
        if tok.surface.lower() in NEGATORS:
            return True
    return False


def lower(instance: TemplateInstance, env: VarEnv, ontology: Ontology,
          ground: bool = False) -> tuple[list[Atom], Term]:
    """Lower a frame instance to atoms plus a handle term.

    The instance's own atom comes first; nested structured slots
    contribute their atoms afterward and appear in the parent as their
    handle terms. With `ground` set, placeholders become constants.
    """
    pred = COMPARISON_FRAMES.get(instance.frame_id, instance.frame_id)
    focal_name = None
    if instance.frame_id in ontology.frames:
        focal_name = ontology.focal_role(instance.frame_id).name
    atom = Atom(predicate=pred, negated=_detect_negation(instance))
    if focal_name is not None and pred not in BUILTIN_PREDICATES:
        atom.args[focal_name] = Term.constant(_trigger_constant(instance.trigger_text))
    nested: list[Atom] = []
    for slot in instance.slots:
        term = None
        if slot.status is SlotStatus.STRUCTURED and slot.instance is not None:
            sub_atoms, term = lower(slot.instance, env, ontology, ground)
            nested.extend(sub_atoms)
        elif slot.text:
            term = _text_term(slot.text, env, ground or slot.name in ADJUNCT_ROLES)
        if term is not None:
            atom.args[slot.name] = term
    handle = _handle_term(instance, env, ground)
    return [atom, *nested], handle


def _text_term(text: str, env: VarEnv, ground: bool) -> Term:
    if ground:
        symbol = normalize_phrase(text) or text.strip().lower()
        return Term.constant(symbol)
    return Term.placeholder(text, env.var_for(text))


def _handle_term(instance: TemplateInstance, env: VarEnv, ground: bool) -> Term:
    source = instance.source_text or instance.trigger_text
    if ground:
        return Term.constant(normalize_phrase(source) or source.strip().lower())
    return Term.variable(env.var_for(source), type_hint=instance.frame_id)


@dataclass
class LoweredSlot:
    atoms: list[Atom]
    handle: Term
    primary_count: int  # top-level (non-nested) atoms in this slot


def lower_slot(slot: Slot, env: VarEnv, ontology: Ontology,
               ground: bool = False) -> LoweredSlot | None:
    if slot.status is SlotStatus.STRUCTURED and slot.instance is not None:
        atoms, handle = lower(slot.instance, env, ontology, ground)
        return LoweredSlot(atoms=atoms, handle=handle, primary_count=1)
    if slot.text:
        term = _text_term(slot.text, env, ground)
        atom = Atom(predicate="utterance", args={"content": term})
        handle = term if term.kind == "variable" else Term.variable(
            term.name or env.var_for(slot.text)
        ) if term.kind == "text" else term
        return LoweredSlot(atoms=[atom], handle=handle, primary_count=1)
    return None


def _often(session: Session) -> bool:
    for slot in session.root.slots:
        if slot.text and re.match(r"\s*often\b", slot.text, re.IGNORECASE):
            return True
    return False


def compose_rule(spec: TemplateSpec, lowered: dict[str, LoweredSlot],
                 modality: str = "always", provenance: str = "") -> list[HornRule]:
    """Assemble HornRules according to the template's construction semantics."""
    semantics = spec.construction_semantics
    if semantics in (Construction.CAUSAL_RULE, Construction.TEMPORAL_SEQUENCE,
                     Construction.POLICY_BRANCH):
        cond_name = "after" if semantics is Construction.TEMPORAL_SEQUENCE else "if"
        antecedents: list[Atom] = []
        cond = lowered.get(cond_name)
        if cond:
            antecedents.extend(cond.atoms)
        extra = lowered.get("and")
        if extra:
            antecedents.extend(extra.atoms)
        then = lowered.get("then")
        if then is None:
            raise ValidationError("missing consequent slot")
        if then.primary_count > 1:
            raise MultipleConsequents(
                "consequent slot lowered to more than one statement; split the entry"
            )
        consequent = then.atoms[0]
        # nested atoms under the consequent are entity conditions; they
        # belong in the body of a Horn clause
        antecedents.extend(then.atoms[1:])
        if semantics is Construction.TEMPORAL_SEQUENCE and cond is not None:
            antecedents.append(Atom(
                predicate="before",
                args={"earlier": cond.handle, "later": then.handle},
            ))
        return [HornRule(antecedents=antecedents, consequent=consequent,
                         modality=modality, provenance=provenance)]
    if semantics is Construction.STATEMENT:
        stmt = lowered.get("statement")
        if stmt is None:
            raise ValidationError("missing statement slot")
        return [
            HornRule(antecedents=[], consequent=atom, modality=modality,
                     provenance=provenance)
            for atom in stmt.atoms
        ]
    raise ValidationError(f"construction {semantics} does not produce rules")


def convert_session(session: Session, ontology: Ontology) -> ConvertedEntry:
    """Dispatch a submitted session to its construction's converter."""
    if session.status != "submitted":
        raise ValidationError("session has not been submitted")
    spec = session.spec
    env = VarEnv()
    semantics = spec.construction_semantics
    modality = "often" if _often(session) else "always"
    ground = semantics in (Construction.STATEMENT, Construction.WORLD_FACT)

    if semantics is Construction.POLICY_STATE_DEF:
        name_slot = session.root.slot("name")
        defn_slot = session.root.slot("definition")
        if name_slot is None or not name_slot.text or defn_slot is None:
            raise ValidationError("state definition needs name and definition")
        lowered = lower_slot(defn_slot, env, ontology)
        duration = None
        duration_slot = session.root.slot("duration")
        if duration_slot is not None and duration_slot.text:
            duration = parse_duration_days(duration_slot.text)
        population = None
        population_slot = session.root.slot("population")
        if population_slot is not None and population_slot.text:
            population = normalize_phrase(population_slot.text)
        return ConvertedEntry(kind="state_def", state_def=StateDefEntry(
            id=normalize_phrase(name_slot.text) or name_slot.text.lower(),
            kind=spec.metadata.get("state_kind", "intermediate"),
            atoms=lowered.atoms if lowered else [],
            duration_days=duration,
            population=population,
        ))

    if semantics is Construction.WORLD_FACT:
        fact_slot = session.root.slot("fact")
        date_slot = session.root.slot("date")
        if fact_slot is None or date_slot is None or not date_slot.text:
            raise ValidationError("world fact needs fact and date slots")
        lowered = lower_slot(fact_slot, env, ontology, ground=True)
        date = date_slot.text.strip()
        if not re.match(r"^\d{4}-\d{2}-\d{2}$", date):
            raise ValidationError(f"date must be ISO formatted, got {date!r}")
        atoms = _split_conjoined_persons(lowered.atoms, ontology) if lowered else []
        return ConvertedEntry(kind="facts", facts=[FactEntry(atoms=atoms, date=date)])

    lowered_slots: dict[str, LoweredSlot] = {}
    for slot in session.root.slots:
        ls = lower_slot(slot, env, ontology, ground)
        if ls is not None:
            lowered_slots[slot.name] = ls
    rules = compose_rule(spec, lowered_slots, modality=modality,
                         provenance=session.id)
    return ConvertedEntry(kind="rules", rules=rules)


def _split_conjoined_persons(atoms: list[Atom], ontology: Ontology) -> list[Atom]:
    """Ground facts like co-location(person: "mary and bobby") carry a
    conjoined span; split it across the frame's two person-typed roles."""
    out = []
    for atom in atoms:
        if atom.predicate not in ontology.frames:
            out.append(atom)
            continue
        roles = {
            r.name: r for r in ontology.resolve_roles(atom.predicate)
            if r.kind is not RoleKind.FOCAL
        }
        person_roles = [n for n, r in roles.items() if r.type_hint == "person"]
        conjoined = None
        for name, term in atom.args.items():
            if (term.kind == "constant" and term.symbol and " and " in term.symbol
                    and name in person_roles):
                conjoined = (name, term)
                break
        if conjoined and len(person_roles) >= 2:
            name, term = conjoined
            left, right = [p.strip() for p in term.symbol.split(" and ", 1)]
            empty = [n for n in person_roles if n != name and n not in atom.args]
            if empty:
                atom.args[name] = Term.constant(left)
                atom.args[empty[0]] = Term.constant(right)
        out.append(atom)
    return out


# --- validation and export ----------------------------------------------------

def validate_rules(rules: list[HornRule], ontology: Ontology) -> None:
    for rule in rules:
        for atom in [*rule.antecedents, rule.consequent]:
            if atom.predicate in BUILTIN_PREDICATES:
                allowed = set(BUILTIN_PREDICATES[atom.predicate])
                bad = set(atom.args) - allowed
                if bad:
                    raise ValidationError(
                        f"builtin {atom.predicate} does not accept roles {sorted(bad)}"
                    )
                continue
            if atom.predicate not in ontology.frames:
                raise ValidationError(f"unknown predicate {atom.predicate}")
            known = {r.name for r in ontology.resolve_roles(atom.predicate)}
            bad = set(atom.args) - known
            if bad:
                raise ValidationError(
                    f"atom {atom.predicate} uses unknown roles {sorted(bad)}"
                )


def export_rules(rules: list[HornRule], fmt: str = "json",
                 ontology: Ontology | None = None) -> str:
    if ontology is not None:
        validate_rules(rules, ontology)
    if fmt == "json":
        doc = {"rules": [r.to_dict() for r in rules]}
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if fmt == "logic_text":
        return "".join(_render_rule(r) + "\n" for r in rules)
    raise ValueError(f"unknown export format {fmt!r}")


def load_rules(raw: str | bytes) -> list[HornRule]:
    if isinstance(raw, bytes):
        raw = raw.decode("utf-8")
    doc = json.loads(raw)
    return [HornRule.from_dict(r) for r in doc.get("rules", [])]


def _render_term(term: Term) -> str:
    if term.kind == "constant":
        sym = term.symbol or ""
        return sym.replace(" ", "_")
    return (term.name or "_").upper()


def _render_atom(atom: Atom) -> str:
    parts = [
        _render_term(term)
        for role, term in atom.args.items()
        if role != "focal"
    ]
    body = f"{atom.predicate}({', '.join(parts)})"
    return f"not {body}" if atom.negated else body


def _render_rule(rule: HornRule) -> str:
    prefix = "often: " if rule.modality == "often" else ""
    head = _render_atom(rule.consequent)
    if rule.is_fact:
        return f"{prefix}{head}."
    body = " & ".join(_render_atom(a) for a in rule.antecedents)
    return f"{prefix}{body} => {head}."
