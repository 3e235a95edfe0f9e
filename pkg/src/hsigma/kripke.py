"""Finite Kripke models for intuitionistic modal logic.

A model has a partial order ``leq`` (for implication) and an accessibility
relation ``r`` (for the box), with ``(leq ; r)`` contained in ``r`` and a
monotone valuation.  *Perfect* models additionally satisfy ``(r ; leq) <= r``
and ``r`` inside the strict order; LC is sound and complete for finite perfect
models.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterator, Mapping, NamedTuple

from . import schemas
from .formula import And, Atom, Bot, Box, Formula, Imp, Or, Top, atoms, sub
from .saturation import TypeSearch
from .tableau import SearchBudgetExceeded, Tableau

__all__ = [
    "KripkeModel", "validate_model", "force", "truth_set", "forcing_table",
    "unravel_to_tree", "upset", "enumerate_rooted_posets",
    "enumerate_perfect_frames", "enumerate_perfect_rooted_models",
    "Status", "Countermodel", "Verdict", "completeness_bound", "decide_lc",
    "DEFAULT_CAP", "DEFAULT_BUDGET", "ENGINES", "SearchBudgetExceeded",
]


def _transitive_closure(nodes, pairs):
    rel = {a: {b for (x, b) in pairs if x == a} for a in nodes}
    changed = True
    while changed:
        changed = False
        for a in nodes:
            extra = set()
            for b in rel[a]:
                extra |= rel.get(b, set())
            if not extra <= rel[a]:
                rel[a] |= extra
                changed = True
    return {(a, b) for a in nodes for b in rel[a]}


@dataclass(frozen=True, eq=False)
class KripkeModel:
    """Nodes, order, accessibility and valuation, stored as given.

    Use :meth:`build` to close ``leq`` reflexively-transitively and ``r`` under
    composition with the order on both sides.
    """

    nodes: tuple[int, ...]
    leq: frozenset[tuple[int, int]]
    r: frozenset[tuple[int, int]]
    valuation: Mapping[int, frozenset[str]]
    root: int | None = None
    labels: Mapping[int, str] | None = field(default=None, compare=False)

    @classmethod
    def build(cls, nodes, leq=(), r=(), valuation=None, root=None, labels=None) -> "KripkeModel":
        nodes = tuple(nodes)
        order = _transitive_closure(nodes, set(leq) | {(a, a) for a in nodes})
        acc = set(r)
        # (leq ; r ; leq) is the least superset of r closed on both sides
        acc = {(a, d) for (b, c) in acc for a in nodes if (a, b) in order
               for d in nodes if (c, d) in order}
        valuation = valuation or {}
        val = {n: frozenset(valuation.get(n, ())) for n in nodes}
        return cls(nodes, frozenset(order), frozenset(acc), val, root, labels)

    def __eq__(self, other):
        if not isinstance(other, KripkeModel):
            return NotImplemented
        return (self.nodes == other.nodes and self.leq == other.leq and self.r == other.r
                and dict(self.valuation) == dict(other.valuation) and self.root == other.root)

    def __hash__(self):
        return hash((self.nodes, self.leq, self.r, self.root))

    @property
    def size(self) -> int:
        return len(self.nodes)

    def atoms(self) -> frozenset[str]:
        return frozenset().union(*self.valuation.values()) if self.valuation else frozenset()

    def label(self, node: int) -> str:
        if self.labels and node in self.labels:
            return self.labels[node]
        return str(node)

    def less(self, a: int, b: int) -> bool:
        return a != b and (a, b) in self.leq

    @cached_property
    def _index(self) -> dict[int, int]:
        return {n: i for i, n in enumerate(self.nodes)}

    @cached_property
    def _up_masks(self) -> list[int]:
        idx = self._index
        masks = [0] * len(self.nodes)
        for a, b in self.leq:
            if a in idx and b in idx:
                masks[idx[a]] |= 1 << idx[b]
        return masks

    @cached_property
    def _r_masks(self) -> list[int]:
        idx = self._index
        masks = [0] * len(self.nodes)
        for a, b in self.r:
            if a in idx and b in idx:
                masks[idx[a]] |= 1 << idx[b]
        return masks

    def hasse_edges(self) -> list[tuple[int, int]]:
        """Covering pairs of the strict order."""
        edges = []
        for a, b in sorted(self.leq):
            if a == b:
                continue
            if not any(self.less(a, c) and self.less(c, b) for c in self.nodes):
                edges.append((a, b))
        return edges

    def restrict_to_upset(self, node: int) -> "KripkeModel":
        """The submodel on ``{b : node <= b}``, rooted at ``node``."""
        keep = tuple(n for n in self.nodes if (node, n) in self.leq)
        ks = set(keep)
        return KripkeModel(
            keep,
            frozenset((a, b) for a, b in self.leq if a in ks and b in ks),
            frozenset((a, b) for a, b in self.r if a in ks and b in ks),
            {n: self.valuation.get(n, frozenset()) for n in keep},
            node,
            self.labels,
        )


# ---------------------------------------------------------------------------
# validation

def validate_model(m: KripkeModel, require_perfect: bool = False) -> list[str]:
    """Describe every violated model condition; the empty list means valid."""
    problems = []
    nodes = set(m.nodes)
    if len(nodes) != len(m.nodes):
        problems.append("nodes: duplicate node ids")
    for name, rel in (("leq", m.leq), ("R", m.r)):
        for a, b in sorted(rel):
            for x in (a, b):
                if x not in nodes:
                    problems.append(f"{name}: unknown node {x} in pair ({a},{b})")
    for x in m.valuation:
        if x not in nodes:
            problems.append(f"val: unknown node {x}")
    if m.root is not None and m.root not in nodes:
        problems.append(f"root: unknown node {m.root}")
    if problems:
        return problems

    leq = m.leq
    for a in m.nodes:
        if (a, a) not in leq:
            problems.append(f"leq reflexive: missing ({a},{a})")
    for a, b in sorted(leq):
        if a != b and (b, a) in leq and a < b:
            problems.append(f"leq antisymmetric: ({a},{b}) and ({b},{a})")
        for c in m.nodes:
            if (b, c) in leq and (a, c) not in leq:
                problems.append(f"leq transitive: ({a},{b}),({b},{c}) but not ({a},{c})")
    for a, b in sorted(leq):
        missing = m.valuation.get(a, frozenset()) - m.valuation.get(b, frozenset())
        if missing:
            problems.append(f"valuation monotone: ({a},{b}) loses {sorted(missing)}")
    for a, b in sorted(leq):
        for c in m.nodes:
            if (b, c) in m.r and (a, c) not in m.r:
                problems.append(f"(leq;R) <= R: ({a},{b}),({b},{c}) but not ({a},{c}) in R")
    if m.root is not None:
        for b in m.nodes:
            if (m.root, b) not in leq:
                problems.append(f"root: ({m.root},{b}) not in leq")
    if require_perfect:
        for a, b in sorted(m.r):
            if a == b or (a, b) not in leq:
                problems.append(f"R <= <: ({a},{b}) in R but not a < b")
            for c in m.nodes:
                if (b, c) in leq and (a, c) not in m.r:
                    problems.append(f"brilliant (R;leq) <= R: ({a},{b}),({b},{c}) but not ({a},{c}) in R")
    return problems


# ---------------------------------------------------------------------------
# forcing

def _truth_mask(m: KripkeModel, f: Formula, memo: dict) -> int:
    got = memo.get(f)
    if got is not None:
        return got
    n = len(m.nodes)
    full = (1 << n) - 1
    if isinstance(f, Atom):
        out = 0
        for i, node in enumerate(m.nodes):
            if f.name in m.valuation.get(node, ()):
                out |= 1 << i
    elif isinstance(f, Bot):
        out = 0
    elif isinstance(f, Top):
        out = full
    elif isinstance(f, And):
        out = _truth_mask(m, f.left, memo) & _truth_mask(m, f.right, memo)
    elif isinstance(f, Or):
        out = _truth_mask(m, f.left, memo) | _truth_mask(m, f.right, memo)
    elif isinstance(f, Imp):
        bad = _truth_mask(m, f.left, memo) & ~_truth_mask(m, f.right, memo)
        out = 0
        for i, up in enumerate(m._up_masks):
            if not up & bad:
                out |= 1 << i
    elif isinstance(f, Box):
        bad = full & ~_truth_mask(m, f.body, memo)
        out = 0
        for i, succ in enumerate(m._r_masks):
            if not succ & bad:
                out |= 1 << i
    else:
        raise TypeError(f"not a formula: {f!r}")
    memo[f] = out
    return out


def truth_set(m: KripkeModel, f: Formula) -> frozenset[int]:
    mask = _truth_mask(m, f, {})
    return frozenset(node for i, node in enumerate(m.nodes) if mask >> i & 1)


def force(m: KripkeModel, node: int, f: Formula) -> bool:
    """Whether ``node`` forces ``f`` in ``m``."""
    try:
        i = m._index[node]
    except KeyError:
        raise KeyError(f"unknown node {node!r}") from None
    return bool(_truth_mask(m, f, {}) >> i & 1)


def forcing_table(m: KripkeModel, f: Formula) -> dict[int, bool]:
    mask = _truth_mask(m, f, {})
    return {node: bool(mask >> i & 1) for i, node in enumerate(m.nodes)}


# ---------------------------------------------------------------------------
# unraveling

def unravel_to_tree(m: KripkeModel, from_minimal: bool = False) -> KripkeModel:
    """Tree model over the strictly increasing chains of ``m``.

    Chains are ordered by initial segment, related by ``r`` through their last
    elements, and inherit the valuation of their last elements; every chain
    forces exactly what its last element forces in ``m``.  By default all
    non-empty chains are used (a forest); with ``from_minimal`` only chains
    starting at a minimal node are kept.
    """
    succ = {a: [b for b in m.nodes if m.less(a, b)] for a in m.nodes}
    starts = m.nodes
    if from_minimal:
        starts = [a for a in m.nodes if not any(m.less(b, a) for b in m.nodes)]
    chains: list[tuple[int, ...]] = []

    def extend(chain):
        chains.append(chain)
        for b in succ[chain[-1]]:
            extend(chain + (b,))

    for a in starts:
        extend((a,))
    ids = {c: i for i, c in enumerate(chains)}
    leq = {(ids[c], ids[d]) for c in chains for d in chains if d[:len(c)] == c}
    r = {(ids[c], ids[d]) for c in chains for d in chains if (c[-1], d[-1]) in m.r}
    val = {ids[c]: m.valuation.get(c[-1], frozenset()) for c in chains}
    labels = {ids[c]: "<" + ",".join(m.label(x) for x in c) + ">" for c in chains}
    root = None
    if m.root is not None and from_minimal:
        root = ids[(m.root,)]
    return KripkeModel(tuple(range(len(chains))), frozenset(leq), frozenset(r), val, root, labels)


def upset(m: KripkeModel, node: int) -> KripkeModel:
    return m.restrict_to_upset(node)


# ---------------------------------------------------------------------------
# enumeration
#
# Posets are naturally labelled (a < b implies a < b as integers) with root 0
# and stored as tuples of down-set bitmasks.

def _ideals(down: tuple[int, ...]) -> Iterator[int]:
    n = len(down)
    for mask in range(1, 1 << n):
        if not mask & 1:
            continue
        if all(down[i] & mask == down[i] for i in range(n) if mask >> i & 1):
            yield mask


def _perm_key_leq(down, perm):
    n = len(down)
    return tuple(sorted((perm[j], perm[i]) for i in range(n) for j in range(n) if down[i] >> j & 1))


def _perms_fixing_root(n):
    for rest in itertools.permutations(range(1, n)):
        yield (0,) + rest


def enumerate_rooted_posets(n: int) -> list[tuple[int, ...]]:
    """Rooted posets on ``n`` nodes up to isomorphism, as down-set bitmasks."""
    if n < 1:
        return []
    layer = [(1,)]
    for k in range(1, n):
        seen = set()
        nxt = []
        for down in layer:
            for ideal in _ideals(down):
                cand = down + (ideal | (1 << k),)
                key = min(_perm_key_leq(cand, p) for p in _perms_fixing_root(k + 1))
                if key not in seen:
                    seen.add(key)
                    nxt.append(cand)
        layer = nxt
    return layer


def _pairs_lt(down):
    n = len(down)
    return [(a, b) for b in range(n) for a in range(n) if a != b and down[b] >> a & 1]


def _close_r(pairs, downs, ups):
    # least superset closed under (leq ; R) and (R ; leq)
    return frozenset((x, y) for a, b in pairs for x in downs[a] for y in ups[b])


def enumerate_perfect_frames(n: int) -> Iterator[tuple[tuple[int, ...], frozenset]]:
    """Pairs (poset, R) of rooted perfect frames on ``n`` nodes, up to isomorphism."""
    for down in enumerate_rooted_posets(n):
        lt = _pairs_lt(down)
        downs = {b: [a for a in range(n) if down[b] >> a & 1] for b in range(n)}
        ups = {a: [b for b in range(n) if down[b] >> a & 1] for a in range(n)}
        found = {frozenset()}
        frontier = [frozenset()]
        while frontier:
            nxt = []
            for r in frontier:
                for pair in lt:
                    if pair in r:
                        continue
                    closed = _close_r(r | {pair}, downs, ups)
                    if closed not in found:
                        found.add(closed)
                        nxt.append(closed)
            frontier = nxt
        autos = [p for p in _perms_fixing_root(n)
                 if _perm_key_leq(down, p) == _perm_key_leq(down, tuple(range(n)))]
        seen = set()
        for r in sorted(found, key=lambda s: (len(s), sorted(s))):
            key = min(tuple(sorted((p[a], p[b]) for a, b in r)) for p in autos)
            if key in seen:
                continue
            seen.add(key)
            yield down, r


def enumerate_perfect_rooted_models(atoms, node_count: int) -> Iterator[KripkeModel]:
    """Every rooted perfect model with ``node_count`` nodes over ``atoms``.

    Isomorphic copies are skipped: frames come from
    :func:`enumerate_perfect_frames` and valuations are reduced modulo the
    frame's automorphisms.
    """
    names = sorted(atoms)
    n = node_count
    for down, r in enumerate_perfect_frames(n):
        base = _perm_key_leq(down, tuple(range(n)))
        r_key = tuple(sorted(r))
        autos = [p for p in _perms_fixing_root(n)
                 if _perm_key_leq(down, p) == base
                 and tuple(sorted((p[a], p[b]) for a, b in r)) == r_key]
        upsets = [mask for mask in range(1 << n)
                  if all(not (mask >> a & 1) or all(mask >> b & 1 for b in range(n) if down[b] >> a & 1)
                         for a in range(n))]
        leq = frozenset((a, b) for b in range(n) for a in range(n) if down[b] >> a & 1)
        seen = set()
        for choice in itertools.product(upsets, repeat=len(names)):
            if len(autos) > 1:
                key = min(tuple(_permute_mask(m, p) for m in choice) for p in autos)
                if key in seen:
                    continue
                seen.add(key)
            val = {i: frozenset(names[k] for k, m in enumerate(choice) if m >> i & 1) for i in range(n)}
            yield KripkeModel(tuple(range(n)), leq, r, val, 0)


def _permute_mask(mask, perm):
    out = 0
    for i, p in enumerate(perm):
        if mask >> i & 1:
            out |= 1 << p
    return out


# ---------------------------------------------------------------------------
# deciding LC

DEFAULT_CAP = 6
DEFAULT_BUDGET = 2_000_000


class Status(str, Enum):
    PROVABLE = "Provable"
    REFUTED = "Refuted"
    INCONCLUSIVE = "Inconclusive"

    def __str__(self):
        return self.value


class Countermodel(NamedTuple):
    model: KripkeModel
    node: int


@dataclass(frozen=True)
class Verdict:
    """Outcome of a decision, with enough context to explain it.

    ``method`` says how it was reached: ``"tableau"`` or ``"types"`` (the two
    exact searches), ``"schema"`` (an instance of a stored LC axiom schema) or
    ``"enumeration"`` (bounded model enumeration up to ``search_cap`` nodes).
    ``search_cap`` equals ``completeness_bound`` whenever the search covered
    every finite perfect model, which is the case for the exact searches.

    ``formula`` is what the caller asked about and ``target`` what was handed
    to LC (``A+`` for H-sigma, ``[]false -> A`` for IPC); the countermodel
    refutes ``target`` at its node.
    """

    status: Status
    formula: Formula
    search_cap: int
    completeness_bound: int
    countermodel: Countermodel | None = None
    method: str = "tableau"
    approx: Formula | None = None
    reduction: str | None = None
    schema: str | None = None
    target: Formula | None = None

    def __post_init__(self):
        if self.target is None:
            object.__setattr__(self, "target", self.formula)

    @property
    def provable(self) -> bool:
        return self.status is Status.PROVABLE

    @property
    def refuted(self) -> bool:
        return self.status is Status.REFUTED

    def with_context(self, **changes) -> "Verdict":
        fields = dict(self.__dict__)
        fields.update(changes)
        return Verdict(**fields)


def completeness_bound(f: Formula) -> int:
    """``2**n`` for ``n`` the number of subformulas of ``f`` and their boxes."""
    closure = sub(f)
    return 2 ** len(closure | {Box(g) for g in closure})


def _exact_countermodel(f: Formula, engine: str, budget: int) -> KripkeModel | None:
    if engine == "types":
        search = TypeSearch(f, budget)
        root = search.refute()
        if root is None:
            return None
        tm = search.model_from(root)
        n = len(tm.types)
    else:
        search = Tableau(f, budget)
        root = search.refute()
        if root is None:
            return None
        tm = search.model_from(root)
        n = len(tm.worlds)
    return KripkeModel(tuple(range(n)), tm.leq, tm.r, tm.valuation, 0)


def _check_countermodel(f: Formula, model: KripkeModel, node: int) -> None:
    problems = validate_model(model, require_perfect=True)
    if problems or force(model, node, f):
        raise AssertionError(f"internal error: bad countermodel for {f}: {problems}")


def _enumerate(f: Formula, cap: int, bound: int, start: int = 1):
    names = atoms(f)
    top = min(cap, bound)
    for size in range(start, top + 1):
        for model in enumerate_perfect_rooted_models(names, size):
            if not force(model, 0, f):
                return model, size
    return None, top


SHRINK_LIMIT = 3
ENGINES = ("auto", "tableau", "types", "enumerate")


def decide_lc(f: Formula, cap: int | None = DEFAULT_CAP, engine: str = "auto",
              budget: int = DEFAULT_BUDGET, shrink: bool = True) -> Verdict:
    """Decide ``LC |- f`` on finite perfect Kripke models.

    Engines:

    * ``"auto"``: the schema certificate, then the tableau of
      :mod:`hsigma.tableau`; if that exceeds ``budget`` steps, bounded
      enumeration of rooted perfect models with up to ``cap`` nodes;
    * ``"tableau"`` or ``"types"``: one exact search alone (the second is the
      type search of :mod:`hsigma.saturation`), raising
      :class:`SearchBudgetExceeded` when out of budget;
    * ``"enumerate"``: the bounded enumeration alone.

    With ``shrink`` a countermodel from an exact search is replaced by the
    first enumerated one when a smaller model of at most three nodes exists.
    Every countermodel is re-checked with :func:`validate_model` and
    :func:`force` before it is returned.
    """
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}")
    cap = DEFAULT_CAP if cap is None else cap
    if cap < 1:
        raise ValueError("cap must be at least 1")
    bound = completeness_bound(f)

    if engine == "auto":
        name = schemas.match(f)
        if name is not None:
            return Verdict(Status.PROVABLE, f, bound, bound, method="schema", schema=name)

    if engine != "enumerate":
        exact = "tableau" if engine == "auto" else engine
        try:
            model = _exact_countermodel(f, exact, budget)
        except SearchBudgetExceeded:
            if engine != "auto":
                raise
        else:
            if model is None:
                return Verdict(Status.PROVABLE, f, bound, bound, method=exact)
            if shrink and model.size > 1:
                smaller, _ = _enumerate(f, min(model.size - 1, SHRINK_LIMIT), bound)
                model = smaller or model
            _check_countermodel(f, model, 0)
            return Verdict(Status.REFUTED, f, model.size, bound, Countermodel(model, 0),
                           method=exact)

    model, reached = _enumerate(f, cap, bound)
    if model is not None:
        _check_countermodel(f, model, 0)
        return Verdict(Status.REFUTED, f, reached, bound, Countermodel(model, 0),
                       method="enumeration")
    status = Status.PROVABLE if reached >= bound else Status.INCONCLUSIVE
    return Verdict(status, f, reached, bound, method="enumeration")
