"""Random formula generators shared by the test modules."""

from __future__ import annotations

import random

from hypothesis import strategies as st

from hsigma.formula import BOT, TOP, And, Atom, Box, Formula, Imp, Or

ATOMS2 = ("p", "q")
ATOMS3 = ("p", "q", "r")


def random_formula(rng: random.Random, atoms=ATOMS3, depth: int = 4,
                   modal: bool = True, constants: bool = True) -> Formula:
    """A formula of connective depth at most ``depth``."""
    if depth == 0 or rng.random() < 0.25:
        if constants and rng.random() < 0.1:
            return rng.choice((BOT, TOP))
        return Atom(rng.choice(atoms))
    ops = ["and", "or", "imp", "imp", "neg"] + (["box", "box"] if modal else [])
    op = rng.choice(ops)
    if op == "box":
        return Box(random_formula(rng, atoms, depth - 1, modal, constants))
    if op == "neg":
        return Imp(random_formula(rng, atoms, depth - 1, modal, constants), BOT)
    left = random_formula(rng, atoms, depth - 1, modal, constants)
    right = random_formula(rng, atoms, depth - 1, modal, constants)
    return {"and": And, "or": Or, "imp": Imp}[op](left, right)


def corpus(seed: int, count: int, **kw) -> list[Formula]:
    rng = random.Random(seed)
    return [random_formula(rng, **kw) for _ in range(count)]


def formulas(atoms=ATOMS3, max_depth: int = 4, modal: bool = True):
    """Hypothesis strategy mirroring :func:`random_formula`."""
    leaves = st.sampled_from([Atom(a) for a in atoms] + [BOT, TOP])

    def extend(children):
        binary = st.tuples(st.sampled_from([And, Or, Imp]), children, children).map(
            lambda t: t[0](t[1], t[2]))
        negs = children.map(lambda f: Imp(f, BOT))
        options = [binary, negs]
        if modal:
            options.append(children.map(Box))
        return st.one_of(*options)

    return st.recursive(leaves, extend, max_leaves=2 ** max_depth)


def formulas_by_size(atoms=ATOMS2, max_connectives: int = 3):
    """Every box-free formula over ``atoms`` with at most ``max_connectives``
    connectives, where &, |, -> and ~ each count as one; ordered by size."""
    layers = [[Atom(a) for a in atoms]]
    yield from layers[0]
    for k in range(1, max_connectives + 1):
        layer = [Imp(f, BOT) for f in layers[k - 1]]
        for i in range(k):
            for left in layers[i]:
                for right in layers[k - 1 - i]:
                    layer.extend((And(left, right), Or(left, right), Imp(left, right)))
        layers.append(layer)
        yield from layer


def count_by_size(atoms: int, max_connectives: int) -> int:
    counts = [atoms]
    for k in range(1, max_connectives + 1):
        counts.append(counts[k - 1] + 3 * sum(counts[i] * counts[k - 1 - i] for i in range(k)))
    return sum(counts)
