"""Exact LC countermodel search over types.

A *type* is the set of subformulas of the target forced at a node, stored as a
bitmask over the subformulas that are atoms, boxes or implications (the value
of a conjunction or disjunction follows from its parts).  A type is
*realizable* when it is locally consistent and every implication and box it
omits has a witness type above it:

* ``A -> B`` missing: a realizable superset where ``A`` holds and ``B`` fails
  (the type itself when it already has ``A`` without ``B``);
* ``[]A`` missing: a realizable superset containing ``[]A``, every ``C`` with
  ``[]C`` in the type, and not ``A``.

Witnesses are strictly larger, so the recursion is well founded.  Realizable
types, ordered by inclusion and related by ``t R u`` iff ``t`` is a proper
subset of ``u``, ``u`` contains every boxed body of ``t`` and some box not in
``t``, form a finite perfect model in which each type forces exactly its own
members.  Conversely the types of the nodes of any finite perfect model are
realizable (pick the witness for a missing box among the R-maximal successors
refuting the body).  So the target is refutable iff some realizable type omits
it, and the search below decides LC outright.  It is exact but decides
every component bit of every type, so on valid formulas with many
implications it is much slower than :mod:`hsigma.tableau`; it is kept as an
independent second engine.
"""

from __future__ import annotations

from dataclasses import dataclass

from .formula import And, Atom, Bot, Box, Formula, Imp, Or, Top, sort_key, sub
from .tableau import SearchBudgetExceeded

__all__ = ["SearchBudgetExceeded", "TypeModel", "TypeSearch", "find_countermodel"]


@dataclass(frozen=True)
class TypeModel:
    """A countermodel found by the search, as plain relations over type indices."""

    types: tuple[int, ...]           # root first
    leq: frozenset[tuple[int, int]]
    r: frozenset[tuple[int, int]]
    valuation: dict[int, frozenset[str]]
    members: tuple[frozenset[Formula], ...]


class TypeSearch:
    def __init__(self, target: Formula, budget: int = 1_000_000):
        self.target = target
        self.budget = budget
        self.steps = 0
        closure = sorted(sub(target), key=sort_key)
        comps = [g for g in closure if isinstance(g, (Atom, Box, Imp))]
        self.comps = comps
        self.bit = {g: 1 << i for i, g in enumerate(comps)}
        self.full = (1 << len(comps)) - 1
        self._ev: dict[Formula, object] = {}
        self.imps = [(self.bit[g], self.ev(g.left), self.ev(g.right)) for g in comps if isinstance(g, Imp)]
        self.boxes = [(self.bit[g], self.ev(g.body)) for g in comps if isinstance(g, Box)]
        self.atom_bits = [(self.bit[g], g.name) for g in comps if isinstance(g, Atom)]
        self._realizable: dict[int, bool] = {}
        self._witnesses: dict[int, list[int]] = {}
        self._extend: dict[tuple, int | None] = {}

    # -- evaluation of subformulas under a mask (monotone in the mask)

    def ev(self, f: Formula):
        got = self._ev.get(f)
        if got is not None:
            return got
        if f in self.bit:
            b = self.bit[f]
            fn = lambda m, b=b: m & b != 0
        elif isinstance(f, Top):
            fn = lambda m: True
        elif isinstance(f, Bot):
            fn = lambda m: False
        elif isinstance(f, And):
            left, right = self.ev(f.left), self.ev(f.right)
            fn = lambda m: left(m) and right(m)
        elif isinstance(f, Or):
            left, right = self.ev(f.left), self.ev(f.right)
            fn = lambda m: left(m) or right(m)
        else:
            raise TypeError(f"unexpected formula {f!r}")
        self._ev[f] = fn
        return fn

    def members(self, m: int) -> frozenset[Formula]:
        return frozenset(g for g in sub(self.target) if self.ev(g)(m))

    # -- local conditions

    def consistent(self, m: int) -> bool:
        for bit, ant, con in self.imps:
            if m & bit:
                if ant(m) and not con(m):
                    return False
            elif con(m):
                return False
        for bit, body in self.boxes:
            if not m & bit and body(m):
                return False
        return True

    def _partial_ok(self, lo: int, hi: int, decided: int) -> bool:
        # lo: bits known set; hi: bits possibly set; decided: bits fixed either way
        for bit, ant, con in self.imps:
            if lo & bit:
                if ant(lo) and not con(hi):
                    return False
            elif decided & bit and con(lo):
                return False
        for bit, body in self.boxes:
            if decided & bit and not lo & bit and body(lo):
                return False
        return True

    def _tick(self):
        self.steps += 1
        if self.steps > self.budget:
            raise SearchBudgetExceeded(f"type search exceeded {self.budget} steps")

    # -- realizability

    def realizable(self, m: int) -> bool:
        got = self._realizable.get(m)
        if got is not None:
            return got
        self._tick()
        witnesses = []
        ok = True
        for bit, ant, con in self.imps:
            if m & bit or ant(m):
                continue
            w = self.extend(m, (ant,), (con,))
            if w is None:
                ok = False
                break
            witnesses.append(w)
        if ok:
            bodies = tuple(body for bit, body in self.boxes if m & bit)
            for bit, body in self.boxes:
                if m & bit:
                    continue
                w = self.extend(m | bit, bodies, (body,))
                if w is None:
                    ok = False
                    break
                witnesses.append(w)
        self._realizable[m] = ok
        if ok:
            self._witnesses[m] = witnesses
        return ok

    def extend(self, base: int, must: tuple, must_not: tuple) -> int | None:
        """Least realizable superset of ``base`` (in search order) meeting the constraints."""
        key = (base, must, must_not)
        if key in self._extend:
            return self._extend[key]
        found = self._reuse(base, must, must_not)
        if found is not None:
            self._extend[key] = found
            return found
        free = [1 << i for i in range(len(self.comps)) if not base >> i & 1]
        found = self._dfs(base, base | self._bits(free), base, free, 0, must, must_not)
        self._extend[key] = found
        return found

    def _reuse(self, base, must, must_not):
        # prefer a type already known to be realizable: keeps models small
        for m in sorted(self._witnesses, key=lambda x: (bin(x).count("1"), x)):
            if m & base == base and all(fn(m) for fn in must) and not any(fn(m) for fn in must_not):
                return m
        return None

    @staticmethod
    def _bits(bits):
        out = 0
        for b in bits:
            out |= b
        return out

    def _dfs(self, lo, hi, decided, free, k, must, must_not):
        self._tick()
        for fn in must:
            if not fn(hi):
                return None
        for fn in must_not:
            if fn(lo):
                return None
        if not self._partial_ok(lo, hi, decided):
            return None
        if k == len(free):
            if self.consistent(lo) and self.realizable(lo):
                return lo
            return None
        b = free[k]
        found = self._dfs(lo, hi & ~b, decided | b, free, k + 1, must, must_not)
        if found is None:
            found = self._dfs(lo | b, hi, decided | b, free, k + 1, must, must_not)
        return found

    # -- top level

    def refute(self) -> int | None:
        """A realizable type omitting the target, or None when there is none."""
        return self.extend(0, (), (self.ev(self.target),))

    def model_from(self, root: int) -> TypeModel:
        order = [root]
        seen = {root}
        i = 0
        while i < len(order):
            for w in self._witnesses[order[i]]:
                if w not in seen:
                    seen.add(w)
                    order.append(w)
            i += 1
        box_bits = self._bits(bit for bit, _ in self.boxes)
        leq, r = set(), set()
        for a, ma in enumerate(order):
            bodies = [body for bit, body in self.boxes if ma & bit]
            for b, mb in enumerate(order):
                if ma & mb != ma:
                    continue
                leq.add((a, b))
                if ma != mb and all(body(mb) for body in bodies) and (mb & ~ma) & box_bits:
                    r.add((a, b))
        val = {a: frozenset(name for bit, name in self.atom_bits if m & bit) for a, m in enumerate(order)}
        return TypeModel(tuple(order), frozenset(leq), frozenset(r), val,
                         tuple(self.members(m) for m in order))


def find_countermodel(target: Formula, budget: int = 1_000_000) -> TypeModel | None:
    """Exact search; None means LC proves ``target``.

    Raises :class:`SearchBudgetExceeded` when the step budget runs out.
    """
    search = TypeSearch(target, budget)
    root = search.refute()
    if root is None:
        return None
    return search.model_from(root)
