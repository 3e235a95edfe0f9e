"""Modal propositional formulas: syntax tree, measures, classes and translations.

Formulas are immutable and compared structurally.  Negation, equivalence and
the "boxdot" operator are sugar over the primitive constructors::

    neg(a)       == Imp(a, BOT)
    iff(a, b)    == And(Imp(a, b), Imp(b, a))
    boxdot(a)    == And(a, Box(a))
"""

from __future__ import annotations

from typing import Callable, Iterable, NamedTuple

__all__ = [
    "Formula", "Bot", "Top", "Atom", "And", "Or", "Imp", "Box",
    "BOT", "TOP", "neg", "iff", "boxdot", "big_and", "big_or",
    "is_atomic", "is_atomic_or_boxed", "sort_key", "atoms", "sub",
    "Measure", "complexity", "rho", "box_depth", "ClassFlags", "classify",
    "is_noi", "is_nnil", "is_tnnil", "is_tnnil_minus", "is_modal",
    "bracket", "bracket_prime", "replace_subformula", "substitute",
    "leivant_translate", "box_translate", "Decomposition",
    "decompose_outer_boxes", "PLACEHOLDER_PREFIX",
]

PLACEHOLDER_PREFIX = "_bx"


class Formula:
    __slots__ = ("_hash", "_size", "_text")

    def __eq__(self, other):
        if self is other:
            return True
        if type(self) is not type(other) or self._hash != other._hash:
            return False
        return self._key() == other._key()

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return self._hash

    def __str__(self):
        text = self._text
        if text is None:
            from .syntax import to_text
            text = self._text = to_text(self)
        return text

    def __repr__(self):
        return f"<{self}>"

    @property
    def size(self) -> int:
        return self._size

    def _key(self):
        raise NotImplementedError


class Bot(Formula):
    __slots__ = ()

    def __init__(self):
        self._hash = hash("Bot")
        self._size = 1
        self._text = None

    def _key(self):
        return ()

    def __reduce__(self):
        return (Bot, ())


class Top(Formula):
    __slots__ = ()

    def __init__(self):
        self._hash = hash("Top")
        self._size = 1
        self._text = None

    def _key(self):
        return ()

    def __reduce__(self):
        return (Top, ())


class Atom(Formula):
    __slots__ = ("name",)

    def __init__(self, name: str):
        if not name:
            raise ValueError("atom name must be non-empty")
        self.name = name
        self._hash = hash(("Atom", name))
        self._size = 1
        self._text = None

    def _key(self):
        return self.name

    def __reduce__(self):
        return (Atom, (self.name,))


class _Binary(Formula):
    __slots__ = ("left", "right")
    _tag = ""

    def __init__(self, left: Formula, right: Formula):
        self.left = left
        self.right = right
        self._hash = hash((self._tag, left._hash, right._hash))
        self._size = 1 + left._size + right._size
        self._text = None

    def _key(self):
        return (self.left, self.right)

    def __reduce__(self):
        return (type(self), (self.left, self.right))


class And(_Binary):
    __slots__ = ()
    _tag = "And"


class Or(_Binary):
    __slots__ = ()
    _tag = "Or"


class Imp(_Binary):
    __slots__ = ()
    _tag = "Imp"


class Box(Formula):
    __slots__ = ("body",)

    def __init__(self, body: Formula):
        self.body = body
        self._hash = hash(("Box", body._hash))
        self._size = 1 + body._size
        self._text = None

    @property
    def inner(self) -> Formula:
        return self.body

    def _key(self):
        return self.body

    def __reduce__(self):
        return (Box, (self.body,))


BOT = Bot()
TOP = Top()


def neg(a: Formula) -> Formula:
    return Imp(a, BOT)


def iff(a: Formula, b: Formula) -> Formula:
    return And(Imp(a, b), Imp(b, a))


def boxdot(a: Formula) -> Formula:
    return And(a, Box(a))


def is_atomic(f: Formula) -> bool:
    """Atoms and the two constants."""
    return isinstance(f, (Atom, Bot, Top))


def is_atomic_or_boxed(f: Formula) -> bool:
    return isinstance(f, (Atom, Bot, Top, Box))


def sort_key(f: Formula):
    """A fixed total order on formulas: by size, then by printed form."""
    return (f._size, str(f))


def big_and(parts: Iterable[Formula]) -> Formula:
    """Conjunction of a set of formulas.

    Duplicates and ``TOP`` members are dropped, a ``BOT`` member absorbs the
    rest, members are ordered by :func:`sort_key`, and the empty conjunction
    is ``TOP``.
    """
    members = set()
    for p in parts:
        if isinstance(p, Bot):
            return BOT
        if not isinstance(p, Top):
            members.add(p)
    if not members:
        return TOP
    ordered = sorted(members, key=sort_key)
    out = ordered[0]
    for p in ordered[1:]:
        out = And(out, p)
    return out


def big_or(parts: Iterable[Formula]) -> Formula:
    """Disjunction counterpart of :func:`big_and` (empty disjunction is ``BOT``)."""
    members = set()
    for p in parts:
        if isinstance(p, Top):
            return TOP
        if not isinstance(p, Bot):
            members.add(p)
    if not members:
        return BOT
    ordered = sorted(members, key=sort_key)
    out = ordered[0]
    for p in ordered[1:]:
        out = Or(out, p)
    return out


def atoms(f: Formula) -> frozenset[str]:
    names = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Atom):
            names.add(g.name)
        elif isinstance(g, _Binary):
            stack.append(g.left)
            stack.append(g.right)
        elif isinstance(g, Box):
            stack.append(g.body)
    return frozenset(names)


def sub(f: Formula) -> frozenset[Formula]:
    """All subformulas of ``f``, including ``f`` itself."""
    seen = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if g in seen:
            continue
        seen.add(g)
        if isinstance(g, _Binary):
            stack.append(g.left)
            stack.append(g.right)
        elif isinstance(g, Box):
            stack.append(g.body)
    return frozenset(seen)


def is_modal(f: Formula) -> bool:
    return any(isinstance(g, Box) for g in sub(f))


# ---------------------------------------------------------------------------
# measures

class Measure(NamedTuple):
    rho: int
    d: int
    i: int
    c: int

    @property
    def order(self) -> tuple[int, int, int]:
        """The lexicographically ordered (d, i, c) part."""
        return (self.d, self.i, self.c)


def rho(f: Formula) -> int:
    if isinstance(f, (And, Or)):
        return max(rho(f.left), rho(f.right))
    if isinstance(f, Imp):
        return max(rho(f.left) + 1, rho(f.right))
    return 0


def box_depth(f: Formula) -> int:
    if isinstance(f, _Binary):
        return max(box_depth(f.left), box_depth(f.right))
    if isinstance(f, Box):
        return box_depth(f.body) + 1
    return 0


def _outer_implications(f: Formula) -> frozenset[Formula]:
    # implications in Sub(f) reachable without entering a box
    found = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, _Binary):
            if isinstance(g, Imp):
                found.add(g)
            stack.append(g.left)
            stack.append(g.right)
    return frozenset(found)


def _outer_connectives(f: Formula) -> int:
    count = 0
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, _Binary):
            count += 1
            stack.append(g.left)
            stack.append(g.right)
    return count


def complexity(f: Formula) -> Measure:
    imps = _outer_implications(f)
    i = max((len(_outer_implications(e)) for e in imps), default=0)
    return Measure(rho(f), box_depth(f), i, _outer_connectives(f))


# ---------------------------------------------------------------------------
# syntactic classes

class ClassFlags(NamedTuple):
    is_noi: bool
    is_nnil: bool
    is_tnnil: bool
    is_tnnil_minus: bool


def is_noi(f: Formula) -> bool:
    """No implication outside the scope of a box."""
    return not _outer_implications(f)


def is_nnil(f: Formula) -> bool:
    # direct reading: no implication occurs (outside boxes) in an antecedent
    if isinstance(f, (And, Or)):
        return is_nnil(f.left) and is_nnil(f.right)
    if isinstance(f, Imp):
        return is_noi(f.left) and is_nnil(f.right)
    return True


def is_tnnil(f: Formula) -> bool:
    if is_atomic(f):
        return True
    if isinstance(f, (And, Or)):
        return is_tnnil(f.left) and is_tnnil(f.right)
    if isinstance(f, Box):
        return is_tnnil(f.body)
    return is_noi(f.left) and is_tnnil(f.left) and is_tnnil(f.right)


def is_tnnil_minus(f: Formula) -> bool:
    if isinstance(f, Box):
        return is_tnnil(f.body)
    if isinstance(f, _Binary):
        return is_tnnil_minus(f.left) and is_tnnil_minus(f.right)
    return True


def classify(f: Formula) -> ClassFlags:
    return ClassFlags(is_noi(f), is_nnil(f), is_tnnil(f), is_tnnil_minus(f))


# ---------------------------------------------------------------------------
# brackets, replacement, substitution

def bracket(a: Formula, b: Formula) -> Formula:
    """``[a]b``: prefix every top-level implication of ``b`` with ``a``."""
    if isinstance(b, And):
        return And(bracket(a, b.left), bracket(a, b.right))
    if isinstance(b, Or):
        return Or(bracket(a, b.left), bracket(a, b.right))
    if isinstance(b, Imp):
        return Imp(a, b)
    return b


def bracket_prime(a: Formula, b: Formula) -> Formula:
    """``[a]'b``: like :func:`bracket`, but ``[a]'(b1 -> b2)`` is
    ``(a' & b1) -> b2`` where ``a'`` is ``a`` with ``b1 -> b2`` replaced by ``b2``.
    """
    if isinstance(b, And):
        return And(bracket_prime(a, b.left), bracket_prime(a, b.right))
    if isinstance(b, Or):
        return Or(bracket_prime(a, b.left), bracket_prime(a, b.right))
    if isinstance(b, Imp):
        return Imp(And(replace_subformula(a, b, b.right), b.left), b.right)
    return b


def replace_subformula(a: Formula, target: Formula, replacement: Formula) -> Formula:
    """Replace every occurrence of ``target`` in ``a``, boxes included.

    Matching is top-down: a matched node is replaced whole and the
    replacement is not searched again.
    """
    if a == target:
        return replacement
    if isinstance(a, _Binary):
        left = replace_subformula(a.left, target, replacement)
        right = replace_subformula(a.right, target, replacement)
        if left is a.left and right is a.right:
            return a
        return type(a)(left, right)
    if isinstance(a, Box):
        body = replace_subformula(a.body, target, replacement)
        return a if body is a.body else Box(body)
    return a


def substitute(f: Formula, mapping: dict[str, Formula]) -> Formula:
    """Simultaneous substitution of formulas for atoms."""
    if isinstance(f, Atom):
        return mapping.get(f.name, f)
    if isinstance(f, _Binary):
        left = substitute(f.left, mapping)
        right = substitute(f.right, mapping)
        if left is f.left and right is f.right:
            return f
        return type(f)(left, right)
    if isinstance(f, Box):
        body = substitute(f.body, mapping)
        return f if body is f.body else Box(body)
    return f


# ---------------------------------------------------------------------------
# translations

def leivant_translate(f: Formula) -> Formula:
    if isinstance(f, And):
        return And(leivant_translate(f.left), leivant_translate(f.right))
    if isinstance(f, Or):
        return Or(boxdot(leivant_translate(f.left)), boxdot(leivant_translate(f.right)))
    if isinstance(f, Imp):
        if is_noi(f.left):
            return Imp(f.left, leivant_translate(f.right))
        return f
    return f


def box_translate(f: Formula) -> Formula:
    if isinstance(f, (And, Or)):
        return type(f)(box_translate(f.left), box_translate(f.right))
    if isinstance(f, Imp):
        inner = Imp(box_translate(f.left), box_translate(f.right))
        return And(inner, Box(inner))
    if isinstance(f, Box):
        return Box(box_translate(f.body))
    return And(f, Box(f))


# ---------------------------------------------------------------------------
# outer boxes

class Decomposition(NamedTuple):
    skeleton: Formula
    bodies: tuple[Formula, ...]
    placeholders: tuple[str, ...]

    def refill(self, fill: Callable[[Formula], Formula] | None = None) -> Formula:
        """Put ``Box(fill(body))`` back in place of each placeholder."""
        fill = fill or (lambda body: body)
        mapping = {name: Box(fill(body)) for name, body in zip(self.placeholders, self.bodies)}
        return substitute(self.skeleton, mapping)


def decompose_outer_boxes(f: Formula) -> Decomposition:
    """Split ``f`` into a box-free skeleton over fresh placeholder atoms.

    Placeholders are numbered in leftmost-first order of the outermost boxed
    subformulas; equal boxed subformulas share one placeholder.
    """
    taken = atoms(f)
    counter = 0
    names: dict[Formula, str] = {}
    bodies: list[Formula] = []

    def fresh() -> str:
        nonlocal counter
        while f"{PLACEHOLDER_PREFIX}{counter}" in taken:
            counter += 1
        name = f"{PLACEHOLDER_PREFIX}{counter}"
        counter += 1
        return name

    def walk(g: Formula) -> Formula:
        if isinstance(g, Box):
            name = names.get(g)
            if name is None:
                name = names[g] = fresh()
                bodies.append(g.body)
            return Atom(name)
        if isinstance(g, _Binary):
            left = walk(g.left)
            right = walk(g.right)
            if left is g.left and right is g.right:
                return g
            return type(g)(left, right)
        return g

    skeleton = walk(f)
    return Decomposition(skeleton, tuple(bodies), tuple(names.values()))
