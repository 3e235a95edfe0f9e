"""Tableau decision procedure for LC with countermodel extraction.

A *sequent* is a pair ``(T, F)`` of sets of subformulas of the target: find a
node of a finite perfect model forcing everything in ``T`` and nothing in
``F``.  Each node is first saturated with the static rules (conjunctions,
disjunctions and forced implications, branching where needed), then every
refuted implication or box gets its own successor world:

* ``F (A -> B)`` with ``A`` not in ``T``: a world above with ``T + {A}`` and
  ``F = {B}``;
* ``F []A``: an R-successor with ``T + {[]A} + {C : []C in T}`` and
  ``F = {A}``.  Adding ``[]A`` is the Loeb step: a refuter of ``A`` can be
  chosen R-maximal, and then it forces ``[]A``.

Forced sets only grow along these steps, so the search terminates.  Results
are cached per sequent, so worlds are shared and the extracted model is a
DAG: ``<=`` is reachability and ``a R b`` holds when some path from ``a`` to
``b`` contains a box step.  That relation is inside the strict order and
closed under ``<=`` on both sides, so the model is perfect, and each world
forces its ``T`` and refutes its ``F``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .formula import And, Atom, Bot, Box, Formula, Imp, Or, Top, sort_key

__all__ = ["SearchBudgetExceeded", "TableauModel", "Tableau", "find_countermodel"]


class SearchBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class TableauModel:
    """Countermodel over world indices; world 0 refutes the target."""

    worlds: tuple[frozenset[Formula], ...]     # saturated forced sets
    leq: frozenset[tuple[int, int]]
    r: frozenset[tuple[int, int]]
    valuation: dict[int, frozenset[str]]


class Tableau:
    def __init__(self, target: Formula, budget: int = 1_000_000):
        self.target = target
        self.budget = budget
        self.steps = 0
        self._memo: dict[tuple[frozenset, frozenset], tuple] = {}
        self._points = 0
        self._worlds: list[frozenset[Formula]] = []
        self._edges: list[list[tuple[int, bool]]] = []

    def _tick(self):
        self.steps += 1
        if self.steps > self.budget:
            raise SearchBudgetExceeded(f"tableau exceeded {self.budget} steps")

    # -- search
    #
    # Signed formulas carry the set of reasons they were added: branch points
    # (ints) or the initial formulas of the sequent (("T", g) / ("F", g)).  A
    # closed branch returns the reasons of its clash; when they do not include
    # the branch point, the other alternative would close for the same reason
    # and is skipped.  A failed sequent keeps its initial reasons as a core,
    # so a failed successor world only blames what it actually used.

    def refute(self) -> int | None:
        """World index refuting the target, or None when LC proves it."""
        return self.solve(frozenset(), frozenset([self.target]))

    def solve(self, t: frozenset, f: frozenset) -> int | None:
        return self._solve(t, f)[0]

    def _solve(self, t: frozenset, f: frozenset):
        key = (t, f)
        got = self._memo.get(key)
        if got is not None:
            return got
        # worlds only grow along successor steps, so the key cannot recur below
        tdep = {g: frozenset([("T", g)]) for g in t}
        fdep = {g: frozenset([("F", g)]) for g in f}
        world, reasons = self._branch(tdep, fdep)
        got = (world, None if world is not None else frozenset(reasons))
        self._memo[key] = got
        return got

    def _branch(self, tdep: dict, fdep: dict):
        self._tick()
        choice = self._saturate(tdep, fdep)
        if isinstance(choice, frozenset):
            return None, choice
        if choice is None:
            return self._world(tdep, fdep)
        self._points += 1
        point = self._points
        g, alternatives = choice
        base = (tdep[g] if g in tdep else fdep[g]) | {point}
        failed = frozenset()
        for extra_t, extra_f in alternatives:
            t2, f2 = dict(tdep), dict(fdep)
            for x in extra_t:
                t2[x] = base
            for x in extra_f:
                f2[x] = base
            world, reasons = self._branch(t2, f2)
            if world is not None:
                return world, None
            if point not in reasons:
                return None, reasons
            failed |= reasons
        return None, failed - {point}

    def _saturate(self, t: dict, f: dict):
        """Apply the deterministic rules in place.

        Returns the reasons of a clash, None when saturated, or the first
        pending branching formula with its alternatives as
        ``(extra T, extra F)`` pairs.
        """
        changed = True
        while changed:
            changed = False
            for g in list(t):
                if isinstance(g, And):
                    for x in (g.left, g.right):
                        if x not in t:
                            t[x] = t[g]
                            changed = True
                elif isinstance(g, Imp) and g.left in t and g.right not in t:
                    t[g.right] = t[g] | t[g.left]
                    changed = True
            for g in list(f):
                if isinstance(g, Or):
                    for x in (g.left, g.right):
                        if x not in f:
                            f[x] = f[g]
                            changed = True
                elif isinstance(g, Imp) and g.left in t and g.right not in f:
                    f[g.right] = f[g] | t[g.left]
                    changed = True
            clash = self._clash(t, f)
            if clash is not None:
                return clash
        pending = []
        for g in t:
            if isinstance(g, Or) and g.left not in t and g.right not in t:
                pending.append(g)
            elif isinstance(g, Imp) and g.right not in t and g.left not in f:
                pending.append(g)
        for g in f:
            if isinstance(g, And) and g.left not in f and g.right not in f:
                pending.append(g)
        if not pending:
            return None
        g = min(pending, key=sort_key)
        if g in t and isinstance(g, Or):
            return g, (((g.left,), ()), ((g.right,), ()))
        if g in t:
            # try the alternative that creates nothing new first
            return g, (((), (g.left,)), ((g.right,), ()))
        return g, (((), (g.left,)), ((), (g.right,)))

    @staticmethod
    def _clash(t: dict, f: dict):
        for g, why in t.items():
            if isinstance(g, Bot):
                return why
            if g in f:
                return why | f[g]
        for g, why in f.items():
            if isinstance(g, Top):
                return why
        return None

    def _world(self, tdep: dict, fdep: dict):
        t = frozenset(tdep)
        children = []
        boxes = {}
        for g in t:
            if isinstance(g, Box):
                boxes.setdefault(g.body, g)
        for g in sorted(fdep, key=sort_key):
            if isinstance(g, Imp) and g.left not in t:
                new_t, new_f = {g.left}, g.right
                boxed = False
            elif isinstance(g, Box):
                new_t, new_f = set(boxes) | {g}, g.body
                boxed = True
            else:
                continue
            child, core = self._solve(t | new_t, frozenset([new_f]))
            if child is None:
                return None, self._blame(core, tdep, fdep[g], boxes)
            children.append((child, boxed))
        self._worlds.append(t)
        self._edges.append(children)
        return len(self._worlds) - 1, None

    @staticmethod
    def _blame(core, tdep, because, boxes):
        # translate a failed successor's core into reasons at this world
        out = set(because)
        for side, x in core:
            if side == "T" and x in tdep:
                out |= tdep[x]
            elif side == "T" and x in boxes:
                out |= tdep[boxes[x]]
        return frozenset(out)

    # -- model extraction

    def model_from(self, root: int) -> TableauModel:
        order = [root]
        index = {root: 0}
        i = 0
        while i < len(order):
            for child, _ in self._edges[order[i]]:
                if child not in index:
                    index[child] = len(order)
                    order.append(child)
            i += 1
        n = len(order)
        edges = [[(index[c], boxed) for c, boxed in self._edges[w]] for w in order]
        # reach[a]: nodes reachable from a (reflexive); via_box[a]: through a box step
        reach = [0] * n
        via_box = [0] * n
        for a in reversed(self._topological(edges)):
            reach[a] |= 1 << a
            for b, boxed in edges[a]:
                reach[a] |= reach[b]
                via_box[a] |= reach[b] if boxed else via_box[b]
        leq = frozenset((a, b) for a in range(n) for b in range(n) if reach[a] >> b & 1)
        r = frozenset((a, b) for a in range(n) for b in range(n) if via_box[a] >> b & 1)
        worlds = tuple(self._worlds[w] for w in order)
        val = {a: frozenset(g.name for g in worlds[a] if isinstance(g, Atom)) for a in range(n)}
        return TableauModel(worlds, leq, r, val)

    @staticmethod
    def _topological(edges):
        seen, out = set(), []

        def visit(a):
            if a in seen:
                return
            seen.add(a)
            for b, _ in edges[a]:
                visit(b)
            out.append(a)

        for a in range(len(edges)):
            visit(a)
        out.reverse()
        return out


def find_countermodel(target: Formula, budget: int = 1_000_000) -> TableauModel | None:
    """None when LC proves ``target``; raises :class:`SearchBudgetExceeded`."""
    tab = Tableau(target, budget)
    root = tab.refute()
    if root is None:
        return None
    return tab.model_from(root)
