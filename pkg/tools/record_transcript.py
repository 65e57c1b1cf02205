#!/usr/bin/env python3
"""Record the golden HTTP transcripts and the golden cookie rule file.

Replays in tests must match these byte for byte (after substituting the
fresh session id for the {SESSION} placeholder). Run from the repo root:

    python3 tools/record_transcript.py
"""

from __future__ import annotations

import json
from pathlib import Path

from fastapi.testclient import TestClient

from skate.converter import convert_session, export_rules
from skate.engine import Engine
from skate.service import create_app
from skate.session import open_session

ROOT = Path(__file__).resolve().parent.parent
OUT = ROOT / "tests" / "data"

COOKIE = "The child takes the cookie from the jar"


def record_flow(client, steps):
    recorded = []
    session_id = None
    for method, path, body in steps:
        if session_id is not None:
            path = path.replace("{SESSION}", session_id)
        if method == "POST":
            resp = client.post(path, json=body) if body is not None else client.post(path)
        elif method == "GET":
            resp = client.get(path)
        else:
            raise ValueError(method)
        raw = resp.content.decode("utf-8")
        if session_id is None and resp.status_code == 200 and '"session"' in raw:
            session_id = resp.json()["session"]
        recorded.append({
            "method": method,
            "path": path.replace(session_id, "{SESSION}") if session_id else path,
            "body": body,
            "status": resp.status_code,
            "response": raw.replace(session_id, "{SESSION}") if session_id else raw,
        })
    return recorded


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    engine = Engine.from_config()
    app = create_app(engine)
    client = TestClient(app)

    cookie_steps = [
        ("POST", "/sessions", {"template": "statement"}),
        ("POST", "/sessions/{SESSION}/slots/statement/text",
         {"text": COOKIE, "expected_seq": 1}),
        ("POST", "/sessions/{SESSION}/slots/statement/sense",
         {"frame": "taking", "expected_seq": 2}),
        ("POST", "/sessions/{SESSION}/submit", None),
    ]
    suggestion_steps = [
        ("POST", "/sessions", {"template": "if-then"}),
        ("POST", "/sessions/{SESSION}/slots/if/text",
         {"text": "a player gets", "expected_seq": 1}),
        ("POST", "/sessions/{SESSION}/slots/if/sense",
         {"frame": "arriving-at-a-location", "expected_seq": 2}),
        ("GET", "/sessions/{SESSION}/suggestions?path=if.destination", None),
    ]

    transcript = {
        "flows": {
            "cookie": record_flow(client, cookie_steps),
            "soccer-suggestions": record_flow(client, suggestion_steps),
        }
    }
    (OUT / "golden_transcript.json").write_text(
        json.dumps(transcript, indent=2) + "\n", encoding="utf-8"
    )

    # golden rule document from a fixed-id scripted session
    s = open_session(engine, "statement", session_id="cookie-golden-session")
    s.input_text("statement", COOKIE)
    s.choose_sense("statement", "taking")
    s.submit()
    entry = convert_session(s, engine.ontology)
    (OUT / "cookie_rule.json").write_text(
        export_rules(entry.rules, "json", engine.ontology), encoding="utf-8"
    )

    print(f"wrote {OUT / 'golden_transcript.json'}")
    print(f"wrote {OUT / 'cookie_rule.json'}")


if __name__ == "__main__":
    main()
