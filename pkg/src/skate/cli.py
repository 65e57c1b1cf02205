"""Operator command line: serve, parse, suggest, validate, eval, rule
export, and the policy store commands.

Exit codes: 0 ok, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import json
import sys
from datetime import date as Date
from pathlib import Path

import click

from . import converter, policy, suggest
from .engine import Engine, SkateConfig
from .errors import SkateError, ValidationError
from .evaluation import evaluate, load_eval_corpus
from .ontology import load_ontology
from .recognizer import ExternalParserClient


def _engine(config_path: str | None, vectors: str | None = None,
            stopwords: str | None = None) -> Engine:
    config = SkateConfig.load(config_path)
    if vectors:
        config.vectors_path = vectors
    if stopwords:
        config.stopwords_path = stopwords
    return Engine.from_config(config)


def _store_options(fn):
    fn = click.option("--vectors", "vectors_path", type=click.Path(exists=True),
                      help="word-vector file override")(fn)
    fn = click.option("--stopwords", "stopwords_path", type=click.Path(exists=True),
                      help="stopword list override")(fn)
    return fn


class _Group(click.Group):
    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except SkateError as exc:
            click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
            sys.exit(1)


@click.group(cls=_Group)
def main():
    """Interactive knowledge acquisition toolkit."""


@main.command()
@click.option("--config", "config_path", type=click.Path(exists=True))
@click.option("--host", default="127.0.0.1")
@click.option("--port", default=8040, type=int)
def serve(config_path, host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service import create_app

    app = create_app(config=SkateConfig.load(config_path))
    uvicorn.run(app, host=host, port=port)


@main.command()
@click.option("--text", required=True)
@click.option("--k", default=None, type=int)
@click.option("--external", default=None, help="external parser endpoint URL")
@click.option("--config", "config_path", type=click.Path(exists=True))
@_store_options
def parse(text, k, external, config_path, vectors_path, stopwords_path):
    """Print ranked frame interpretations as JSON."""
    engine = _engine(config_path, vectors_path, stopwords_path)
    recognizer = engine.recognizer
    if external:
        recognizer.external = ExternalParserClient(external)
    interps = recognizer.parse(text, k)
    click.echo(json.dumps(
        {"text": text, "interpretations": [i.to_dict() for i in interps]},
        indent=2,
    ))


@main.command(name="suggest")
@click.option("--prior", required=True)
@click.option("--frame", default=None, help="committed frame id")
@click.option("--role", default=None, help="active role name")
@click.option("--n", default=3, type=int)
@click.option("--config", "config_path", type=click.Path(exists=True))
@_store_options
def suggest_cmd(prior, frame, role, n, config_path, vectors_path, stopwords_path):
    """Generate completions, filtered against a committed frame."""
    engine = _engine(config_path, vectors_path, stopwords_path)
    candidates = suggest.generate(engine.suggester, prior, n)
    committed = None
    if frame:
        interps = [i for i in engine.recognizer.parse(prior) if i.frame_id == frame]
        if not interps:
            raise SkateError(f"prior text does not evoke frame {frame}")
        committed = interps[0]
    kept = suggest.filter_compatible(candidates, committed, role, engine.recognizer)
    click.echo(json.dumps(
        {"prior": prior, "suggestions": [c.to_dict() for c in kept]}, indent=2
    ))


@main.command(name="validate-ontology")
@click.argument("path", type=click.Path(exists=True))
def validate_ontology(path):
    """Validate an ontology file; nonzero exit with diagnostics on stderr."""
    try:
        with open(path, "rb") as fh:
            ontology = load_ontology(fh)
    except SkateError as exc:
        diag = {"valid": False, "error": type(exc).__name__, "detail": str(exc)}
        if isinstance(exc, ValidationError) and exc.subject:
            diag["subject"] = exc.subject
        click.echo(json.dumps(diag), err=True)
        sys.exit(1)
    click.echo(json.dumps({"valid": True, "frames": len(ontology.frames)}))


@main.command(name="eval")
@click.option("--corpus", "corpus_path", type=click.Path(exists=True),
              help="annotated corpus (defaults to the bundled fixture)")
@click.option("--json", "as_json", is_flag=True)
@click.option("--config", "config_path", type=click.Path(exists=True))
@_store_options
def eval_cmd(corpus_path, as_json, config_path, vectors_path, stopwords_path):
    """Score the recognizer against an annotated corpus."""
    engine = _engine(config_path, vectors_path, stopwords_path)
    if corpus_path is None:
        from .engine import _data_path

        corpus_path = _data_path("eval_corpus.jsonl")
    with open(corpus_path, encoding="utf-8") as fh:
        records = load_eval_corpus(fh.read())
    report = evaluate(engine.recognizer, records)
    if as_json:
        click.echo(json.dumps(report.to_dict(), indent=2, sort_keys=True))
    else:
        click.echo(f"sentences: {report.sentences}")
        click.echo(f"frame top-1 accuracy: {report.frame_top1_accuracy:.3f}")
        click.echo(f"span F1: {report.span_f1:.3f} "
                   f"(P={report.span_precision:.3f} R={report.span_recall:.3f})")


@main.command(name="export-rules")
@click.argument("rules_path", type=click.Path(exists=True))
@click.option("--format", "fmt", type=click.Choice(["json", "logic_text"]),
              default="logic_text")
@click.option("--config", "config_path", type=click.Path(exists=True))
def export_rules_cmd(rules_path, fmt, config_path):
    """Re-export a rule file as JSON or human-readable logic text."""
    engine = _engine(config_path)
    with open(rules_path, encoding="utf-8") as fh:
        rules = converter.load_rules(fh.read())
    click.echo(converter.export_rules(rules, fmt, engine.ontology), nl=False)


# --- policy store ------------------------------------------------------------

DEFAULT_STORE = "policy_store.json"


def _load_store(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise SkateError(f"no policy store at {path}; run `skate policy build` first")


def _store_graph(store_doc: dict, engine: Engine) -> policy.PolicyGraph:
    states = [policy.StateDef.from_dict(s) for s in store_doc["policy"]["states"]]
    rules = [converter.HornRule.from_dict(r) for r in store_doc["policy"]["rules"]]
    return policy.build_policy(rules, states, engine.ontology)


@main.group(name="policy")
def policy_group():
    """Build a policy, assert facts, query compliance."""


@policy_group.command(name="build")
@click.argument("policy_path", type=click.Path(exists=True))
@click.option("--store", default=DEFAULT_STORE, type=click.Path())
@click.option("--config", "config_path", type=click.Path(exists=True))
def policy_build(policy_path, store, config_path):
    engine = _engine(config_path)
    with open(policy_path, encoding="utf-8") as fh:
        doc = json.load(fh)
    states = [policy.StateDef.from_dict(s) for s in doc.get("states", [])]
    rules = [converter.HornRule.from_dict(r) for r in doc.get("rules", [])]
    graph = policy.build_policy(rules, states, engine.ontology)
    Path(store).write_text(json.dumps({
        "policy": {"states": doc.get("states", []), "rules": doc.get("rules", [])},
        "facts": [],
        "version": 0,
    }, indent=2), encoding="utf-8")
    click.echo(json.dumps({"states": len(graph.states), "rules": len(graph.rules),
                           "store": store}))


@policy_group.command(name="assert")
@click.argument("facts_path", type=click.Path(exists=True))
@click.option("--store", default=DEFAULT_STORE, type=click.Path())
@click.option("--config", "config_path", type=click.Path(exists=True))
def policy_assert(facts_path, store, config_path):
    engine = _engine(config_path)
    store_doc = _load_store(store)
    graph = _store_graph(store_doc, engine)
    with open(facts_path, encoding="utf-8") as fh:
        new_facts = policy.load_facts_doc(fh.read())
    world = policy.WorldState(
        tuple(policy.load_facts_doc_body({"facts": store_doc["facts"]})),
        version=store_doc.get("version", 0),
    )
    world = policy.assert_facts(graph, world, new_facts)
    store_doc["facts"] = [f.to_dict() for f in world.facts]
    store_doc["version"] = world.version
    Path(store).write_text(json.dumps(store_doc, indent=2), encoding="utf-8")
    click.echo(json.dumps({"version": world.version, "facts": len(world.facts)}))


@policy_group.command(name="query")
@click.option("--asof", required=True)
@click.option("--state", default=None)
@click.option("--store", default=DEFAULT_STORE, type=click.Path())
@click.option("--json", "as_json", is_flag=True)
@click.option("--config", "config_path", type=click.Path(exists=True))
def policy_query(asof, state, store, as_json, config_path):
    engine = _engine(config_path)
    store_doc = _load_store(store)
    graph = _store_graph(store_doc, engine)
    world = policy.WorldState(
        tuple(policy.load_facts_doc_body({"facts": store_doc["facts"]})),
        version=store_doc.get("version", 0),
    )
    report = policy.query(graph, world, Date.fromisoformat(asof), state)
    doc = report.to_dict()
    if as_json:
        click.echo(json.dumps(doc, indent=2))
        return
    click.echo(f"asof {doc['asof']}" + (f" state={state}" if state else ""))
    header = f"{'person':<12} {'state':<14} {'start':<12} {'end':<12} {'days left':>9}"
    click.echo(header)
    click.echo("-" * len(header))
    for s in doc["statuses"]:
        click.echo(f"{s['person']:<12} {s['state']:<14} "
                   f"{s['start'] or '-':<12} {s['end'] or '-':<12} "
                   f"{s['days_remaining']:>9}")
    click.echo(json.dumps(doc))


if __name__ == "__main__":
    main()
