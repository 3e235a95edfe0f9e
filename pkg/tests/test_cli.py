import io
import json

import pytest

from hsigma.cli import main
from hsigma.formula import Imp
from hsigma.kripke import force, validate_model
from hsigma.modelio import model_from_document
from hsigma.syntax import parse

FRIEDMAN = {"nodes": [0, 1, 2], "leq": [[0, 1], [0, 2]], "R": [[0, 1], [0, 2]],
            "val": {"1": ["p"], "2": ["q"]}, "root": 0, "labels": {"0": "alpha"}}


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def friedman_file(tmp_path):
    path = tmp_path / "friedman.json"
    path.write_text(json.dumps(FRIEDMAN))
    return str(path)


# -- decide

@pytest.mark.parametrize("argv, code", [
    (["decide", "--logic", "hsigma", "[](p|q) -> ([]p | []q)"], 1),
    (["decide", "--logic", "lc", "p -> []p"], 0),
    (["decide", "--logic", "ipc", "p | ~p"], 1),
    (["decide", "--logic", "ipcbox", "[]p -> []p"], 0),
    (["decide", "--logic", "ipc", "[]p -> p"], 2),
    (["decide", "p ->"], 2),
    (["decide", "--max-nodes", "0", "p"], 2),
    (["decide", "--bogus", "p"], 2),
])
def test_decide_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_decide_text_shows_pipeline(capsys):
    code, out, _ = run(capsys, "decide", "[](p|q) -> ([]p | []q)")
    assert code == 1
    assert "A+:" in out and "Refuted" in out and "countermodel" in out


def test_inconclusive_exit_code(capsys):
    f = "~~[](~~p -> p) -> [](~~p -> p)"
    code, out, _ = run(capsys, "decide", "--engine", "enumerate", "--max-nodes", "1",
                       "--output", "json", f)
    assert code == 3 and json.loads(out)["status"] == "Inconclusive"


def test_decide_json_keys(capsys):
    code, out, _ = run(capsys, "decide", "--output", "json", "[](p|q) -> ([]p | []q)")
    doc = json.loads(out)
    for key in ("status", "formula", "approx", "cap", "bound", "countermodel"):
        assert key in doc
    assert doc["status"] == "Refuted"
    assert set(doc["countermodel"]) == {"node", "model"}


def test_printed_countermodels_reverify(capsys, tmp_path):
    for f in ["[](p|q) -> ([]p | []q)", "~~[](~~p -> p) -> [](~~p -> p)",
              "(p -> q) -> [](p -> q)"]:
        _, out, _ = run(capsys, "decide", "--output", "json", f)
        doc = json.loads(out)
        path = tmp_path / "cm.json"
        path.write_text(json.dumps(doc["countermodel"]["model"]))
        code, table, _ = run(capsys, "model", "eval", str(path), doc["target"],
                             "--output", "json")
        assert code == 0
        assert json.loads(table)["forces"][str(doc["countermodel"]["node"])] is False
        m = model_from_document(doc["countermodel"]["model"])
        assert validate_model(m, True) == []


def test_decide_dot(capsys):
    code, out, _ = run(capsys, "decide", "--output", "dot", "--logic", "lc", "[]p -> p")
    assert code == 1 and out.startswith("digraph")
    code, out, _ = run(capsys, "decide", "--output", "dot", "p -> p")
    assert code == 0 and out.startswith("//")


def test_stdin_worst_exit_code(capsys, monkeypatch):
    text = "# corpus\np -> []p\n\n[]p -> p\n"
    code, out, _ = run(capsys, "decide", "--logic", "lc", "--output", "json", "-",
                       stdin=text, monkeypatch=monkeypatch)
    assert code == 1
    assert [json.loads(x)["status"] for x in out.splitlines()] == ["Provable", "Refuted"]


def test_trace_goes_to_stderr(capsys):
    code, out, err = run(capsys, "decide", "--trace", "~~p -> p")
    assert code == 1 and err.strip() and "verdict" in out


# -- approx, translate, classify

@pytest.mark.parametrize("argv, expected", [
    (["approx", "--which", "plus", "~~p"], "p"),
    (["approx", "--which", "star", "~~p"], "p"),
    (["approx", "--which", "minus", "(p->q)->r"], "(p -> q) -> r"),
    (["translate", "--which", "box", "p"], "p & []p"),
    (["translate", "--which", "leivant", "p | q"], "(p & []p) | (q & []q)"),
    (["translate", "--which", "leivant", "p"], "p"),
])
def test_text_outputs(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out.strip() == expected


def test_approx_example_is_lc_equivalent(capsys):
    from hsigma.decider import lc_equiv
    _, out, _ = run(capsys, "approx", "--which", "plus", "~~[](~~p->p) -> [](~~p->p)")
    assert lc_equiv(parse(out.strip()), parse("[](p|~p) | ~[](p|~p)")).provable


def test_approx_trace(capsys):
    code, out, _ = run(capsys, "approx", "--which", "plus", "--trace", "--output", "json",
                       "(p -> q) -> r")
    doc = json.loads(out)
    assert code == 0 and doc["trace"] and doc["result"]


@pytest.mark.parametrize("text, expect", [
    ("p | [](p->q)", {"is_noi": True, "is_nnil": True, "is_tnnil": True}),
    ("(p->q)->r", {"rho": 2, "is_nnil": False}),
    ("(p->q)->[]r", {"is_tnnil_minus": True, "is_tnnil": False}),
])
def test_classify(capsys, text, expect):
    code, out, _ = run(capsys, "classify", "--output", "json", text)
    doc = json.loads(out)
    assert code == 0
    assert {k: doc[k] for k in expect} == expect


def test_classify_text(capsys):
    _, out, _ = run(capsys, "classify", "(p->q)->r")
    assert "nnil: no" in out and "rho=2" in out


# -- model utilities

def test_model_eval_friedman(capsys, friedman_file):
    code, out, _ = run(capsys, "model", "eval", friedman_file, "[](p|q) -> ([]p|[]q)")
    assert code == 0
    assert "alpha: false" in out and "1: true" in out


def test_model_check(capsys, tmp_path, friedman_file):
    assert run(capsys, "model", "check", "--perfect", friedman_file)[0] == 0
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"nodes": [0, 1], "leq": [[0, 1]], "R": [[1, 0]]}))
    code, out, _ = run(capsys, "model", "check", "--perfect", str(bad))
    assert code == 1 and out.strip()


def test_model_unravel_single_node(capsys, tmp_path):
    path = tmp_path / "one.json"
    path.write_text(json.dumps({"nodes": [0], "val": {"0": ["p"]}}))
    code, out, _ = run(capsys, "model", "unravel", str(path))
    doc = json.loads(out)
    assert code == 0 and doc["nodes"] == [0] and doc["val"] == {"0": ["p"]}


def test_model_errors(capsys, tmp_path, friedman_file):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"nodes": [0], "leq": [[0, 5]]}))
    assert run(capsys, "model", "check", str(bad))[0] == 2
    assert run(capsys, "model", "eval", friedman_file)[0] == 2
    assert run(capsys, "model", "check", str(tmp_path / "missing.json"))[0] == 2
