"""NNIL-style approximations: ``A*``, ``A+``, ``A-`` and the dagger variant.

``nnil_star`` rewrites a formula, treating boxed subformulas as atoms, into a
formula with no nested implications to the left.  ``tnnil_plus`` applies the
same rewriting thoroughly, inside every box.  Each recursive call of the
rewriting is on a formula whose ``(d, i, c)`` measure is lexicographically
smaller, which is what guarantees termination; passing a :class:`RewriteTrace`
records every step so the decrease can be inspected.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Callable

from .formula import (
    TOP, And, Atom, Bot, Box, Formula, Imp, Measure, Or, Top, big_and, big_or,
    bracket, bracket_prime, complexity, decompose_outer_boxes, sort_key,
    substitute,
)

__all__ = [
    "Rule", "TraceStep", "RewriteTrace", "MeasureError",
    "nnil_star", "tnnil_plus", "tnnil_minus", "dagger",
]


class Rule(str, Enum):
    ATOMIC_OR_BOXED = "atomic-or-boxed"
    CONJ = "conj"
    DISJ = "disj"
    SPLIT_CONJ = "split-conj"
    SPLIT_DISJ = "split-disj"
    ATOM = "imp-atom-antecedent"
    TOP = "imp-top-antecedent"
    BOT = "imp-bot-antecedent"
    IMPLICATIONS = "imp-implication-antecedents"


@dataclass(frozen=True)
class TraceStep:
    rule: Rule
    input: Formula
    outputs: tuple[Formula, ...]
    measure_before: Measure
    measure_after: tuple[Measure, ...]
    variant: str | None = None  # "bracket" or "bracket-prime" for the implication case

    def decreases(self) -> bool:
        if self.rule is Rule.ATOMIC_OR_BOXED:
            return True
        return all(m.order < self.measure_before.order for m in self.measure_after)

    def __str__(self):
        outs = "; ".join(str(o) for o in self.outputs) or "-"
        tag = self.rule.value + (f"[{self.variant}]" if self.variant else "")
        before = self.measure_before.order
        after = ", ".join(str(m.order) for m in self.measure_after)
        return f"{tag:28} {self.input}  ==>  {outs}   {before} > [{after}]"


@dataclass
class RewriteTrace:
    steps: list[TraceStep] = field(default_factory=list)

    def record(self, rule, f, outputs, variant=None):
        outputs = tuple(outputs)
        self.steps.append(TraceStep(
            rule, f, outputs, complexity(f),
            tuple(complexity(o) for o in outputs), variant))

    def violations(self) -> list[TraceStep]:
        return [s for s in self.steps if not s.decreases()]

    def render(self) -> str:
        return "\n".join(f"{n:4}  {s}" for n, s in enumerate(self.steps, 1))


class MeasureError(AssertionError):
    """The bracket-prime fallback failed to lower the measure."""


def _split_outer(f: Formula, kind: type) -> tuple[Formula, Formula] | None:
    # leftmost occurrence of ``kind`` reachable through & and | only
    if isinstance(f, kind):
        return f.left, f.right
    if isinstance(f, (And, Or)):
        found = _split_outer(f.left, kind)
        if found:
            return type(f)(found[0], f.right), type(f)(found[1], f.right)
        found = _split_outer(f.right, kind)
        if found:
            return type(f)(f.left, found[0]), type(f)(f.left, found[1])
    return None


def _conjuncts(f: Formula) -> list[Formula]:
    out, stack = set(), [f]
    while stack:
        g = stack.pop()
        if isinstance(g, And):
            stack.append(g.left)
            stack.append(g.right)
        else:
            out.add(g)
    return sorted(out, key=sort_key)


def _imp(antecedents: list[Formula], consequent: Formula) -> Formula:
    # ``/\ antecedents -> consequent``, dropping the implication when nothing is left
    antecedent = big_and(antecedents)
    if isinstance(antecedent, Top):
        return consequent
    return Imp(antecedent, consequent)


class _Rewriter:
    """Shared case analysis; ``leaf`` finishes atomic and boxed formulas."""

    def __init__(self, leaf: Callable[[Formula], Formula], trace: RewriteTrace | None):
        self.leaf = leaf
        self.trace = trace

    def note(self, rule, f, outputs, variant=None):
        if self.trace is not None:
            self.trace.record(rule, f, outputs, variant)

    def run(self, f: Formula) -> Formula:
        if isinstance(f, (Atom, Bot, Top, Box)):
            self.note(Rule.ATOMIC_OR_BOXED, f, ())
            return self.leaf(f)
        if isinstance(f, And):
            self.note(Rule.CONJ, f, (f.left, f.right))
            return And(self.run(f.left), self.run(f.right))
        if isinstance(f, Or):
            self.note(Rule.DISJ, f, (f.left, f.right))
            return Or(self.run(f.left), self.run(f.right))
        return self.implication(f)

    def implication(self, f: Imp) -> Formula:
        b, c = f.left, f.right

        split = _split_outer(c, And)
        if split:
            a1, a2 = Imp(b, split[0]), Imp(b, split[1])
            self.note(Rule.SPLIT_CONJ, f, (a1, a2))
            return And(self.run(a1), self.run(a2))

        split = _split_outer(b, Or)
        if split:
            a1, a2 = Imp(split[0], c), Imp(split[1], c)
            self.note(Rule.SPLIT_DISJ, f, (a1, a2))
            return And(self.run(a1), self.run(a2))

        xs = _conjuncts(b)
        if any(isinstance(x, Bot) for x in xs):
            self.note(Rule.BOT, f, ())
            return TOP
        if any(isinstance(x, Top) for x in xs):
            rest = _imp([x for x in xs if not isinstance(x, Top)], c)
            self.note(Rule.TOP, f, (rest,))
            return self.run(rest)

        plain = [x for x in xs if isinstance(x, (Atom, Box))]
        if plain:
            p = plain[0]
            rest = _imp([x for x in xs if x != p], c)
            self.note(Rule.ATOM, f, (rest,))
            return Imp(self.leaf(p), self.run(rest))

        # every member of xs is an implication
        lowered = [_imp([y for y in xs if y != x] + [x.right], c) for x in xs]
        zs = sorted({x.left for x in xs} | {c}, key=sort_key)
        target = complexity(f).order
        variant = "bracket"
        a_k = big_or(bracket(b, z) for z in zs)
        if not complexity(a_k).order < target:
            variant = "bracket-prime"
            a_k = big_or(bracket_prime(b, z) for z in zs)
            if not complexity(a_k).order < target:
                raise MeasureError(f"measure did not decrease on {f}: {a_k}")
        self.note(Rule.IMPLICATIONS, f, (*lowered, a_k), variant)
        return big_and([self.run(g) for g in lowered] + [self.run(a_k)])


def _identity(f: Formula) -> Formula:
    return f


@lru_cache(maxsize=65536)
def _star_cached(f: Formula) -> Formula:
    return _Rewriter(_identity, None).run(f)


def nnil_star(f: Formula, trace: RewriteTrace | None = None) -> Formula:
    """The NNIL approximation ``A*`` of ``f`` (boxed subformulas kept as atoms)."""
    if trace is None:
        return _star_cached(f)
    return _Rewriter(_identity, trace).run(f)


def tnnil_plus(f: Formula, trace: RewriteTrace | None = None) -> Formula:
    """The TNNIL approximation ``A+``.

    The outermost boxed subformulas are approximated first (recursively, inside
    their boxes); the box-free skeleton then goes through :func:`nnil_star`.
    """
    if trace is None:
        return _plus_cached(f)
    return _plus(f, trace)


def _plus(f: Formula, trace: RewriteTrace | None) -> Formula:
    dec = decompose_outer_boxes(f)
    inner = [tnnil_plus(body, trace) for body in dec.bodies]
    star = nnil_star(dec.skeleton, trace)
    return substitute(star, {n: Box(b) for n, b in zip(dec.placeholders, inner)})


@lru_cache(maxsize=65536)
def _plus_cached(f: Formula) -> Formula:
    return _plus(f, None)


def tnnil_minus(f: Formula) -> Formula:
    """``A-``: the skeleton of ``f`` kept as is, each outer box body replaced by its ``+``."""
    return decompose_outer_boxes(f).refill(tnnil_plus)


def _dagger_leaf(f: Formula) -> Formula:
    if isinstance(f, Box):
        return Box(dagger(f.body))
    return f


def dagger(f: Formula, trace: RewriteTrace | None = None) -> Formula:
    """``A†``: the star rewriting that also descends into boxes directly."""
    if trace is None:
        return _dagger_cached(f)
    rewriter = _Rewriter(None, trace)
    rewriter.leaf = lambda g: Box(rewriter.run(g.body)) if isinstance(g, Box) else g
    return rewriter.run(f)


@lru_cache(maxsize=65536)
def _dagger_cached(f: Formula) -> Formula:
    return _Rewriter(_dagger_leaf, None).run(f)
