"""Command-line front end.

Exit codes: 0 Provable (or OK), 1 Refuted, 2 usage, parse or model-file
error, 3 Inconclusive.  A formula argument of ``-`` reads formulas from
standard input, one per non-empty line.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import approx as approx_mod
from .decider import decide_hsigma, decide_ipc, decide_ipc_box
from .formula import (
    Formula, box_translate, classify, complexity, leivant_translate,
)
from .kripke import (
    DEFAULT_CAP, ENGINES, KripkeModel, Status, Verdict, decide_lc, forcing_table,
    unravel_to_tree, validate_model,
)
from .modelio import ModelFormatError, load_model, model_to_document, to_dot
from .syntax import ParseError, parse

EXIT_OK, EXIT_REFUTED, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3

_EXIT = {Status.PROVABLE: EXIT_OK, Status.REFUTED: EXIT_REFUTED,
         Status.INCONCLUSIVE: EXIT_INCONCLUSIVE}
# when several formulas are decided, the worst outcome decides the exit code
_SEVERITY = [EXIT_OK, EXIT_REFUTED, EXIT_INCONCLUSIVE, EXIT_USAGE]

_APPROX = {
    "star": approx_mod.nnil_star,
    "plus": approx_mod.tnnil_plus,
    "minus": lambda f, trace=None: approx_mod.tnnil_minus(f),
    "dagger": approx_mod.dagger,
}
_TRANSLATE = {"leivant": leivant_translate, "box": box_translate}


class UsageError(Exception):
    pass


def _formulas(text: str) -> list[Formula]:
    if text == "-":
        lines = [ln.strip() for ln in sys.stdin.read().splitlines()]
        texts = [ln for ln in lines if ln and not ln.startswith("#")]
        if not texts:
            raise UsageError("no formula on standard input")
    else:
        texts = [text]
    return [parse(t) for t in texts]


def _worst(codes) -> int:
    return max(codes, key=_SEVERITY.index, default=EXIT_OK)


# ---------------------------------------------------------------------------
# rendering

def _bound_text(bound: int) -> str:
    return f"2^{bound.bit_length() - 1}"


def model_text(m: KripkeModel, node: int | None = None) -> str:
    lines = []
    for n in m.nodes:
        atoms = ", ".join(sorted(m.valuation.get(n, ()))) or "-"
        mark = "  <- refutes" if n == node else ""
        lines.append(f"  node {m.label(n)}: {atoms}{mark}")
    hasse = ", ".join(f"{m.label(a)}<{m.label(b)}" for a, b in m.hasse_edges()) or "-"
    acc = ", ".join(f"{m.label(a)}R{m.label(b)}" for a, b in sorted(m.r)) or "-"
    lines.append(f"  order (covering pairs): {hasse}")
    lines.append(f"  R: {acc}")
    return "\n".join(lines)


def verdict_document(v: Verdict) -> dict:
    doc = {
        "status": v.status.value,
        "formula": str(v.formula),
        "approx": str(v.approx) if v.approx is not None else None,
        "cap": v.search_cap,
        "bound": v.completeness_bound,
        "countermodel": None,
        "method": v.method,
        "reduction": v.reduction,
        "target": str(v.target),
    }
    if v.schema:
        doc["schema"] = v.schema
    if v.countermodel is not None:
        doc["countermodel"] = {"node": v.countermodel.node,
                               "model": model_to_document(v.countermodel.model)}
    return doc


def verdict_text(v: Verdict) -> str:
    lines = [f"formula: {v.formula}"]
    if v.approx is not None:
        lines.append(f"A+:      {v.approx}")
    if v.target != v.formula and v.target != v.approx:
        lines.append(f"decided: {v.target}")
    how = v.method + (f" {v.schema}" if v.schema else "")
    lines.append(f"verdict: {v.status.value} ({how}; searched {v.search_cap}, "
                 f"bound {_bound_text(v.completeness_bound)})")
    if v.countermodel is not None:
        m, node = v.countermodel
        lines.append(f"countermodel refuting {v.target} at node {m.label(node)}:")
        lines.append(model_text(m, node))
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# commands

def cmd_decide(args) -> int:
    deciders = {"hsigma": decide_hsigma, "lc": decide_lc,
                "ipc": decide_ipc, "ipcbox": decide_ipc_box}
    decide = deciders[args.logic]
    codes = []
    for f in _formulas(args.formula):
        if args.trace and args.logic == "hsigma":
            trace = approx_mod.RewriteTrace()
            approx_mod.tnnil_plus(f, trace)
            print(trace.render(), file=sys.stderr)
        try:
            v = decide(f, args.max_nodes, engine=args.engine)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if args.output == "json":
            print(json.dumps(verdict_document(v)))
        elif args.output == "dot":
            if v.countermodel is not None:
                print(to_dot(v.countermodel.model, highlight=v.countermodel.node), end="")
            else:
                print(f"// {v.status.value}: {v.formula}")
        else:
            print(verdict_text(v))
        codes.append(_EXIT[v.status])
    return _worst(codes)


def cmd_approx(args) -> int:
    fn = _APPROX[args.which]
    for f in _formulas(args.formula):
        trace = approx_mod.RewriteTrace() if args.trace else None
        if args.which == "minus":
            result = fn(f)
        else:
            result = fn(f, trace)
        if args.output == "json":
            doc = {"formula": str(f), "which": args.which, "result": str(result)}
            if trace is not None:
                doc["trace"] = [str(s) for s in trace.steps]
            print(json.dumps(doc))
        else:
            if trace is not None:
                print(trace.render())
            print(result)
    return EXIT_OK


def cmd_translate(args) -> int:
    fn = _TRANSLATE[args.which]
    for f in _formulas(args.formula):
        result = fn(f)
        if args.output == "json":
            print(json.dumps({"formula": str(f), "which": args.which, "result": str(result)}))
        else:
            print(result)
    return EXIT_OK


def cmd_classify(args) -> int:
    for f in _formulas(args.formula):
        flags = classify(f)
        m = complexity(f)
        if args.output == "json":
            print(json.dumps({"formula": str(f), **flags._asdict(), **m._asdict()}))
        else:
            names = [("noi", flags.is_noi), ("nnil", flags.is_nnil),
                     ("tnnil", flags.is_tnnil), ("tnnil-", flags.is_tnnil_minus)]
            print(f"{f}")
            print("  " + "  ".join(f"{n}: {'yes' if ok else 'no'}" for n, ok in names))
            print(f"  rho={m.rho} d={m.d} i={m.i} c={m.c}")
    return EXIT_OK


def cmd_model(args) -> int:
    m = load_model(args.file)
    if args.action == "check":
        problems = validate_model(m, require_perfect=args.perfect)
        if args.output == "json":
            print(json.dumps({"ok": not problems, "violations": problems}))
        elif problems:
            print("\n".join(problems))
        else:
            print("ok")
        return EXIT_REFUTED if problems else EXIT_OK
    if args.action == "unravel":
        tree = unravel_to_tree(m, from_minimal=args.from_minimal)
        if args.output == "dot":
            print(to_dot(tree, name="unravelled"), end="")
        else:
            print(json.dumps(model_to_document(tree)))
        return EXIT_OK
    # eval
    if args.formula is None:
        raise UsageError("model eval needs a formula")
    problems = validate_model(m)
    if problems:
        raise ModelFormatError("invalid model: " + "; ".join(problems))
    for f in _formulas(args.formula):
        table = forcing_table(m, f)
        if args.output == "json":
            print(json.dumps({"formula": str(f),
                              "forces": {str(n): table[n] for n in m.nodes}}))
        else:
            print(f"{f}")
            for n in m.nodes:
                print(f"  {m.label(n)}: {'true' if table[n] else 'false'}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing

def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hsigma",
        description="Decide the Sigma-1 provability logic of HA, LC and IPC; "
                    "approximate, translate and classify modal formulas.")
    sub = parser.add_subparsers(dest="command", required=True)

    def formula_arg(p):
        p.add_argument("formula", help='formula text, or "-" to read lines from stdin')

    def output_arg(p, choices=("text", "json")):
        p.add_argument("--output", choices=choices, default="text")

    p = sub.add_parser("decide", help="decide provability")
    formula_arg(p)
    p.add_argument("--logic", choices=["hsigma", "lc", "ipc", "ipcbox"], default="hsigma")
    p.add_argument("--max-nodes", type=_positive, default=DEFAULT_CAP,
                   help="node cap for the enumeration fallback (default %(default)s)")
    p.add_argument("--engine", choices=list(ENGINES), default="auto")
    p.add_argument("--trace", action="store_true", help="print the A+ rewrite steps to stderr")
    output_arg(p, ("text", "json", "dot"))
    p.set_defaults(run=cmd_decide)

    p = sub.add_parser("approx", help="compute A*, A+, A- or the dagger variant")
    formula_arg(p)
    p.add_argument("--which", choices=list(_APPROX), default="plus")
    p.add_argument("--trace", action="store_true", help="print every rewrite step")
    output_arg(p)
    p.set_defaults(run=cmd_approx)

    p = sub.add_parser("translate", help="Leivant or box translation")
    formula_arg(p)
    p.add_argument("--which", choices=list(_TRANSLATE), default="leivant")
    output_arg(p)
    p.set_defaults(run=cmd_translate)

    p = sub.add_parser("classify", help="syntactic classes and complexity measure")
    formula_arg(p)
    output_arg(p)
    p.set_defaults(run=cmd_classify)

    p = sub.add_parser("model", help="check, unravel or evaluate a model file")
    p.add_argument("action", choices=["check", "unravel", "eval"])
    p.add_argument("file", help="JSON model document (path)")
    p.add_argument("formula", nargs="?", help="formula for eval")
    p.add_argument("--perfect", action="store_true", help="check perfect-model conditions too")
    p.add_argument("--from-minimal", action="store_true",
                   help="unravel only chains starting at minimal nodes")
    output_arg(p, ("text", "json", "dot"))
    p.set_defaults(run=cmd_model)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.run(args)
    except (ParseError, ModelFormatError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
