"""Reading and writing Kripke models.

The document format is JSON::

    {"nodes": [0, 1, 2],
     "leq":   [[0, 1], [0, 2], [1, 2]],
     "R":     [[0, 1], [0, 2]],
     "val":   {"2": ["p"]},
     "root":  0}

``leq`` is closed reflexively and transitively on load and ``R`` is closed
under composition with ``leq`` on both sides.  ``root`` and an extra
``labels`` map are optional.
"""

from __future__ import annotations

import json
from typing import Any

from .kripke import KripkeModel

__all__ = ["ModelFormatError", "model_from_document", "model_to_document",
           "load_model", "dump_model", "to_dot"]


class ModelFormatError(ValueError):
    """The document is not a well-formed model description."""


def _node(x: Any, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise ModelFormatError(f"{where}: node ids must be integers, got {x!r}")
    try:
        return int(x)
    except ValueError:
        raise ModelFormatError(f"{where}: node ids must be integers, got {x!r}") from None


def _pairs(doc: dict, key: str, nodes: set[int]) -> list[tuple[int, int]]:
    raw = doc.get(key, [])
    if not isinstance(raw, list):
        raise ModelFormatError(f"{key}: expected a list of pairs")
    out = []
    for item in raw:
        if not isinstance(item, (list, tuple)) or len(item) != 2:
            raise ModelFormatError(f"{key}: expected a pair, got {item!r}")
        a, b = (_node(x, key) for x in item)
        for x in (a, b):
            if x not in nodes:
                raise ModelFormatError(f"{key}: unknown node {x} in pair ({a},{b})")
        out.append((a, b))
    return out


def model_from_document(doc: Any) -> KripkeModel:
    if not isinstance(doc, dict):
        raise ModelFormatError("a model document must be a JSON object")
    if "nodes" not in doc or not isinstance(doc["nodes"], list) or not doc["nodes"]:
        raise ModelFormatError("nodes: expected a non-empty list")
    nodes = [_node(x, "nodes") for x in doc["nodes"]]
    if len(set(nodes)) != len(nodes):
        raise ModelFormatError("nodes: duplicate node ids")
    known = set(nodes)
    leq = _pairs(doc, "leq", known)
    r = _pairs(doc, "R", known)
    raw_val = doc.get("val", {})
    if not isinstance(raw_val, dict):
        raise ModelFormatError("val: expected an object mapping node ids to atom lists")
    val = {}
    for key, names in raw_val.items():
        node = _node(key, "val")
        if node not in known:
            raise ModelFormatError(f"val: unknown node {node}")
        if not isinstance(names, list) or not all(isinstance(n, str) for n in names):
            raise ModelFormatError(f"val: expected a list of atom names for node {node}")
        val[node] = frozenset(names)
    root = doc.get("root")
    if root is not None:
        root = _node(root, "root")
        if root not in known:
            raise ModelFormatError(f"root: unknown node {root}")
    labels = doc.get("labels")
    if labels is not None:
        if not isinstance(labels, dict):
            raise ModelFormatError("labels: expected an object")
        labels = {_node(k, "labels"): str(v) for k, v in labels.items()}
    return KripkeModel.build(nodes, leq, r, val, root, labels)


def model_to_document(m: KripkeModel) -> dict:
    doc = {
        "nodes": list(m.nodes),
        "leq": [list(p) for p in sorted(m.leq) if p[0] != p[1]],
        "R": [list(p) for p in sorted(m.r)],
        "val": {str(n): sorted(m.valuation.get(n, ())) for n in m.nodes
                if m.valuation.get(n)},
    }
    if m.root is not None:
        doc["root"] = m.root
    if m.labels:
        doc["labels"] = {str(n): m.labels[n] for n in m.nodes if n in m.labels}
    return doc


def load_model(path_or_text: str) -> KripkeModel:
    """Parse a model from a file path, or from JSON text starting with ``{``."""
    text = path_or_text
    if not path_or_text.lstrip().startswith("{"):
        with open(path_or_text, encoding="utf-8") as fh:
            text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"not valid JSON: {exc}") from None
    return model_from_document(doc)


def dump_model(m: KripkeModel, indent: int | None = None) -> str:
    return json.dumps(model_to_document(m), indent=indent)


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'


def to_dot(m: KripkeModel, name: str = "model", highlight: int | None = None) -> str:
    """Graphviz source: Hasse diagram of the order solid, ``R`` dashed."""
    lines = [f"digraph {_quote(name)} {{", "  rankdir=BT;"]
    for n in m.nodes:
        atoms = ", ".join(sorted(m.valuation.get(n, ())))
        label = _quote(m.label(n) + ("\n" + atoms if atoms else ""))
        shape = "doublecircle" if n == highlight else "circle"
        lines.append(f"  {n} [label={label}, shape={shape}];")
    for a, b in m.hasse_edges():
        lines.append(f"  {a} -> {b};")
    for a, b in sorted(m.r):
        lines.append(f"  {a} -> {b} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"
