"""HTTP/JSON API over sessions, parsing, suggestions, rule export, and
policy queries.

State-changing session calls are strictly ordered per session: clients
may echo the last sequence number they saw (`expected_seq`) and receive
409 with the current value on a mismatch. Everything else is stateless
over the immutable stores.
"""

from __future__ import annotations

import threading
from datetime import date as Date

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import converter, policy, suggest
from .engine import Engine, SkateConfig
from .errors import (
    BadPath, GeneratorUnavailable, IncompleteEntry, OptionNotOffered,
    SessionClosed, SkateError, UnknownFrame, UnknownState, UnknownTemplate,
)
from .session import Session, open_session, parse_path

NOT_FOUND_ERRORS = (BadPath, UnknownFrame, UnknownTemplate, UnknownState)


class SessionStore:
    def __init__(self):
        self._sessions: dict[str, Session] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._guard = threading.Lock()

    def add(self, session: Session) -> None:
        with self._guard:
            self._sessions[session.id] = session
            self._locks[session.id] = threading.Lock()

    def get(self, session_id: str) -> tuple[Session, threading.Lock]:
        with self._guard:
            session = self._sessions.get(session_id)
            if session is None:
                raise BadPath(f"unknown session {session_id}")
            return session, self._locks[session_id]


class SeqConflict(Exception):
    def __init__(self, expected: int):
        self.expected = expected


def create_app(engine: Engine | None = None,
               config: SkateConfig | None = None) -> FastAPI:
    engine = engine or Engine.from_config(config)
    app = FastAPI(title="skate", docs_url=None, redoc_url=None)
    store = SessionStore()
    app.state.engine = engine
    app.state.sessions = store
    app.state.policy_graph = None
    app.state.world = policy.WorldState()
    policy_lock = threading.Lock()

    @app.exception_handler(SkateError)
    async def _domain_error(request: Request, exc: SkateError):
        status = 404 if isinstance(exc, NOT_FOUND_ERRORS) else 400
        if isinstance(exc, GeneratorUnavailable):
            status = 503
        body = {"error": type(exc).__name__, "detail": str(exc)}
        if isinstance(exc, IncompleteEntry):
            body["paths"] = exc.paths
        return JSONResponse(status_code=status, content=body)

    @app.exception_handler(SeqConflict)
    async def _seq_conflict(request: Request, exc: SeqConflict):
        return JSONResponse(
            status_code=409,
            content={"error": "SeqConflict", "expected_seq": exc.expected},
        )

    def _check_seq(session: Session, body: dict | None) -> None:
        if body and body.get("expected_seq") is not None:
            if int(body["expected_seq"]) != session.seq:
                raise SeqConflict(session.seq)

    @app.get("/healthz")
    def healthz():
        return {"status": "ok", "frames": len(engine.ontology.frames)}

    @app.post("/sessions")
    async def create_session(request: Request):
        body = await request.json()
        template = body.get("template")
        if not template:
            raise SkateError("missing template")
        session = open_session(engine, template)
        store.add(session)
        return {"session": session.id, "seq": session.seq,
                "state": session.state_dict()}

    @app.post("/sessions/{session_id}/slots/{path}/text")
    async def slot_text(session_id: str, path: str, request: Request):
        body = await request.json()
        session, lock = store.get(session_id)
        with lock:
            _check_seq(session, body)
            options = session.input_text(path, body.get("text", ""))
            return {
                "session": session.id,
                "seq": session.seq,
                "options": [o.to_dict() for o in options],
                "state": session.state_dict(),
            }

    @app.post("/sessions/{session_id}/slots/{path}/sense")
    async def slot_sense(session_id: str, path: str, request: Request):
        body = await request.json()
        session, lock = store.get(session_id)
        with lock:
            _check_seq(session, body)
            frame = body.get("frame")
            if not frame:
                raise OptionNotOffered("missing frame")
            instance = session.choose_sense(path, frame)
            return {
                "session": session.id,
                "seq": session.seq,
                "instance": instance.state_dict(),
                "state": session.state_dict(),
            }

    @app.post("/sessions/{session_id}/slots/{path}/refine")
    async def slot_refine(session_id: str, path: str, request: Request):
        body = await request.json() if int(request.headers.get("content-length") or 0) else {}
        session, lock = store.get(session_id)
        with lock:
            _check_seq(session, body)
            options = session.refine_slot(path)
            return {
                "session": session.id,
                "seq": session.seq,
                "options": [o.to_dict() for o in options],
                "state": session.state_dict(),
            }

    @app.post("/sessions/{session_id}/slots/{path}/leave")
    async def slot_leave(session_id: str, path: str, request: Request):
        body = await request.json() if int(request.headers.get("content-length") or 0) else {}
        session, lock = store.get(session_id)
        with lock:
            _check_seq(session, body)
            session.leave_unstructured(path)
            return {"session": session.id, "seq": session.seq,
                    "state": session.state_dict()}

    @app.delete("/sessions/{session_id}/slots/{path}")
    async def slot_delete(session_id: str, path: str):
        session, lock = store.get(session_id)
        with lock:
            session.delete_optional_slot(path)
            return {"session": session.id, "seq": session.seq,
                    "state": session.state_dict()}

    @app.get("/sessions/{session_id}/suggestions")
    def suggestions(session_id: str, path: str, n: int = 3):
        session, lock = store.get(session_id)
        with lock:
            prior, committed, active_role = suggestion_context(session, path)
            candidates = suggest.generate(engine.suggester, prior, n)
            kept = suggest.filter_compatible(
                candidates, committed, active_role, engine.recognizer
            )
            return {
                "session": session.id,
                "path": path,
                "prior": prior,
                "suggestions": [c.to_dict() for c in kept],
            }

    @app.post("/sessions/{session_id}/submit")
    async def submit(session_id: str, request: Request):
        body = await request.json() if int(request.headers.get("content-length") or 0) else {}
        session, lock = store.get(session_id)
        with lock:
            _check_seq(session, body)
            session.submit()
            entry = converter.convert_session(session, engine.ontology)
            out: dict = {"session": session.id, "kind": entry.kind}
            if entry.kind == "rules":
                converter.validate_rules(entry.rules, engine.ontology)
                out["rules"] = [r.to_dict() for r in entry.rules]
            elif entry.kind == "state_def":
                out["state_def"] = entry.state_def.to_dict()
            else:
                out["facts"] = [f.to_dict() for f in entry.facts]
            return out

    @app.post("/policy/build")
    async def policy_build(request: Request):
        body = await request.json()
        states = [policy.StateDef.from_dict(s) for s in body.get("states", [])]
        rules = [converter.HornRule.from_dict(r) for r in body.get("rules", [])]
        with policy_lock:
            graph = policy.build_policy(rules, states, engine.ontology)
            app.state.policy_graph = graph
            app.state.world = policy.WorldState()
            return {"states": len(graph.states), "rules": len(graph.rules)}

    @app.post("/policy/facts")
    async def policy_facts(request: Request):
        body = await request.json()
        with policy_lock:
            graph = app.state.policy_graph
            if graph is None:
                raise SkateError("no policy built")
            facts = policy.load_facts_doc_body(body)
            app.state.world = policy.assert_facts(graph, app.state.world, facts)
            return {"version": app.state.world.version,
                    "facts": len(app.state.world.facts)}

    @app.get("/policy/query")
    def policy_query(asof: str, state: str | None = None):
        graph = app.state.policy_graph
        if graph is None:
            raise SkateError("no policy built")
        world = app.state.world  # consistent snapshot: worlds are immutable
        report = policy.query(graph, world, Date.fromisoformat(asof), state)
        return report.to_dict()

    @app.get("/policy/graph")
    def policy_graph():
        graph = app.state.policy_graph
        if graph is None:
            raise SkateError("no policy built")
        return graph.to_dict()

    return app


def suggestion_context(session: Session, raw_path: str):
    """Prior text, committed interpretation, and active role for a slot.

    The prior is the template scaffold plus everything typed before the
    active slot; the committed interpretation is the enclosing
    structured instance's origin, if any.
    """
    path = parse_path(raw_path)
    if not path:
        raise BadPath("empty path")
    parts: list[str] = []
    spec_by_name = {s.name: s for s in session.spec.slots}
    for spec_slot in session.spec.slots:
        slot = session.root.slot(spec_slot.name)
        if slot is None:
            continue
        if spec_slot.name == path[0]:
            if spec_slot.prefix:
                parts.append(spec_slot.prefix)
            break
        if slot.text or slot.instance is not None:
            if spec_slot.prefix:
                parts.append(spec_slot.prefix)
            text = slot.instance.source_text if slot.instance else slot.text
            if text:
                parts.append(text)
    if path[0] not in spec_by_name:
        raise BadPath(raw_path)
    _, top_slot = session._resolve((path[0],))
    committed = None
    active_role = None
    if len(path) == 1:
        if top_slot.text:
            parts.append(top_slot.text)
    else:
        instance = top_slot.instance
        if instance is None:
            raise BadPath(raw_path)
        committed = instance.origin
        active_role = path[1]
        if instance.source_text:
            parts.append(instance.source_text)
        target = instance.slot(path[1])
        if target is None:
            raise BadPath(raw_path)
        if len(path) == 2 and target.text:
            parts.append(target.text)
    return " ".join(p for p in parts if p), committed, active_role


def main(argv: list[str] | None = None) -> None:
    import argparse

    import uvicorn

    parser = argparse.ArgumentParser(description="run the skate service")
    parser.add_argument("--config")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8040)
    args = parser.parse_args(argv)
    config = SkateConfig.load(args.config) if args.config else SkateConfig.load()
    uvicorn.run(create_app(config=config), host=args.host, port=args.port)


if __name__ == "__main__":
    main()
