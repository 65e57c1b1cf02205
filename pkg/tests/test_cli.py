import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from skate.cli import main
from skate.engine import _data_path

DATA = Path(__file__).parent / "data"


@pytest.fixture()
def runner():
    return CliRunner()


def test_parse_outputs_ranked_json(runner):
    result = runner.invoke(main, ["parse", "--text",
                                  "The child takes the cookie from the jar"])
    assert result.exit_code == 0
    doc = json.loads(result.output)
    assert doc["interpretations"][0]["frame"] == "taking"
    assert doc["interpretations"][0]["source"] == "knn"


def test_parse_k_limits_results(runner):
    result = runner.invoke(main, ["parse", "--text", "a player gets", "--k", "2"])
    assert result.exit_code == 0
    assert len(json.loads(result.output)["interpretations"]) == 2


def test_validate_ontology_ok(runner):
    result = runner.invoke(main, ["validate-ontology", str(_data_path("ontology.json"))])
    assert result.exit_code == 0
    assert json.loads(result.output)["valid"] is True


def test_validate_ontology_bad_exits_nonzero(runner, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"frames": [
        {"id": "a", "triggers": [], "roles": [], "parents": ["ghost"]},
    ]}))
    result = runner.invoke(main, ["validate-ontology", str(bad)])
    assert result.exit_code == 1
    diag = json.loads(result.stderr.strip())
    assert diag["valid"] is False
    assert diag["error"] == "ValidationError"


def test_usage_error_exit_code(runner):
    result = runner.invoke(main, ["parse"])  # missing --text
    assert result.exit_code == 2


def test_eval_human_and_json(runner):
    result = runner.invoke(main, ["eval"])
    assert result.exit_code == 0
    assert "frame top-1 accuracy" in result.output
    result = runner.invoke(main, ["eval", "--json"])
    doc = json.loads(result.output)
    assert doc["sentences"] == 60
    assert 0 <= doc["frame_top1_accuracy"] <= 1


def test_eval_deterministic(runner):
    a = runner.invoke(main, ["eval", "--json"]).output
    b = runner.invoke(main, ["eval", "--json"]).output
    assert a == b


def test_eval_empty_corpus_is_error(runner, tmp_path):
    empty = tmp_path / "empty.jsonl"
    empty.write_text("")
    result = runner.invoke(main, ["eval", "--corpus", str(empty)])
    assert result.exit_code == 1


def test_suggest_command(runner):
    result = runner.invoke(main, [
        "suggest", "--prior", "If a player gets",
        "--frame", "arriving-at-a-location", "--role", "destination",
    ])
    assert result.exit_code == 0
    doc = json.loads(result.output)
    assert [s["text"] for s in doc["suggestions"]] == ["to the goal"]


def test_export_rules_logic_text(runner):
    result = runner.invoke(main, ["export-rules", str(DATA / "cookie_rule.json")])
    assert result.exit_code == 0
    assert result.output.startswith("taking(")


def test_policy_store_lifecycle(runner, tmp_path):
    store = tmp_path / "store.json"
    policy_doc = _data_path("covid_policy.json")
    result = runner.invoke(main, ["policy", "build", str(policy_doc),
                                  "--store", str(store)])
    assert result.exit_code == 0, result.output

    facts = tmp_path / "facts.json"
    facts.write_text(json.dumps({"facts": [
        {"pred": "symptomatic", "args": {"person": "bobby"}, "date": "2021-09-04"},
        {"pred": "exposed", "args": {"person": "mary"}, "date": "2021-09-02"},
    ]}))
    result = runner.invoke(main, ["policy", "assert", str(facts),
                                  "--store", str(store)])
    assert result.exit_code == 0, result.output
    assert json.loads(result.output)["version"] == 1

    result = runner.invoke(main, ["policy", "query", "--asof", "2021-09-04",
                                  "--store", str(store), "--json"])
    assert result.exit_code == 0, result.output
    doc = json.loads(result.output)
    by_person = {s["person"]: s["days_remaining"] for s in doc["statuses"]}
    assert by_person == {"bobby": 14, "mary": 3}

    # table output also carries the machine-readable line
    result = runner.invoke(main, ["policy", "query", "--asof", "2021-09-04",
                                  "--store", str(store)])
    assert result.exit_code == 0
    assert "bobby" in result.output and "14" in result.output


def test_policy_query_without_store_fails(runner, tmp_path):
    result = runner.invoke(main, ["policy", "query", "--asof", "2021-09-04",
                                  "--store", str(tmp_path / "missing.json")])
    assert result.exit_code == 1


def test_vectors_and_stopwords_flags(runner, tmp_path):
    # a degenerate one-token vector file makes everything else OOV: the
    # pipeline still runs and ranks by the zero-vector tie rule
    vectors = tmp_path / "tiny.txt"
    vectors.write_text("player 1.0 0.0\n")
    stops = tmp_path / "stops.txt"
    stops.write_text("the\na\n")
    result = runner.invoke(main, [
        "parse", "--text", "a player gets",
        "--vectors", str(vectors), "--stopwords", str(stops),
    ])
    assert result.exit_code == 0, result.output
    doc = json.loads(result.output)
    frames = [i["frame"] for i in doc["interpretations"]]
    assert frames == sorted(frames)  # all-zero scores fall back to id order
