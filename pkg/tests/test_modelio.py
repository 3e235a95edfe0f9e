import json
import random

import pytest

from hsigma.kripke import KripkeModel, enumerate_perfect_rooted_models
from hsigma.modelio import (
    ModelFormatError, dump_model, load_model, model_from_document,
    model_to_document, to_dot,
)

FRIEDMAN = {"nodes": [0, 1, 2], "leq": [[0, 1], [0, 2]], "R": [[0, 1], [0, 2]],
            "val": {"1": ["p"], "2": ["q"]}, "root": 0}


def test_round_trip():
    rng = random.Random(5)
    models = list(enumerate_perfect_rooted_models(("p", "q"), 3))
    for m in rng.sample(models, 50):
        assert model_from_document(model_to_document(m)) == m
        assert load_model(dump_model(m)) == m


def test_document_shape():
    doc = model_to_document(model_from_document(FRIEDMAN))
    assert doc == FRIEDMAN


def test_relations_are_closed_on_load():
    m = model_from_document({"nodes": [0, 1, 2], "leq": [[0, 1], [1, 2]], "R": [[1, 2]]})
    assert (0, 2) in m.leq and (1, 1) in m.leq
    # R is closed under <= on the left
    assert (0, 2) in m.r


def test_labels_survive():
    doc = dict(FRIEDMAN, labels={"0": "alpha", "1": "beta"})
    m = model_from_document(doc)
    assert m.label(0) == "alpha" and m.label(2) == "2"
    assert model_to_document(m)["labels"] == {"0": "alpha", "1": "beta"}


def test_load_from_file(tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps(FRIEDMAN))
    assert load_model(str(path)) == model_from_document(FRIEDMAN)


@pytest.mark.parametrize("doc", [
    [],
    {"nodes": []},
    {"nodes": [0, 0]},
    {"nodes": [0, True]},
    {"nodes": [0], "leq": [[0, 1]]},
    {"nodes": [0, 1], "R": [[0]]},
    {"nodes": [0], "val": {"3": ["p"]}},
    {"nodes": [0], "val": {"0": "p"}},
    {"nodes": [0], "root": 7},
    {"nodes": ["x"]},
])
def test_malformed_documents(doc):
    with pytest.raises(ModelFormatError):
        model_from_document(doc)


def test_bad_json_text():
    with pytest.raises(ModelFormatError):
        load_model("{not json")


def test_dot():
    m = KripkeModel.build([0, 1, 2], leq=[(0, 1), (1, 2)], r=[(0, 2)],
                          valuation={2: {'a"b'}}, root=0)
    dot = to_dot(m, highlight=0)
    assert dot.startswith('digraph "model" {')
    assert "0 -> 1;" in dot and "1 -> 2;" in dot
    assert "0 -> 2;" not in dot          # only covering pairs of the order
    assert "0 -> 2 [style=dashed];" in dot
    assert 'a\\"b' in dot
    assert "shape=doublecircle" in dot
