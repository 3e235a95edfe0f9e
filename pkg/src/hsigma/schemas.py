"""Named axiom schemata and instance matching.

Schemata are formulas over metavariables (atoms named ``a``, ``b``, ``c``);
an instance replaces each metavariable by a formula.  ``match`` recovers the
substitution, which is how the decider recognises axiom instances cheaply.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .formula import (
    Atom, Bot, Box, Formula, Imp, Top, leivant_translate, substitute,
)
from .syntax import parse

__all__ = ["Schema", "SCHEMATA", "LC_CERTIFICATES", "match", "instances"]


@dataclass(frozen=True)
class Schema:
    name: str
    pattern: Formula
    metavariables: tuple[str, ...]
    atoms_only: bool = False   # metavariables range over atoms only

    def instantiate(self, *args: Formula) -> Formula:
        if len(args) != len(self.metavariables):
            raise ValueError(f"{self.name} takes {len(self.metavariables)} formulas")
        if self.atoms_only and not all(isinstance(a, Atom) for a in args):
            raise ValueError(f"{self.name} is instantiated with atoms only")
        return substitute(self.pattern, dict(zip(self.metavariables, args)))

    def match(self, f: Formula) -> dict[str, Formula] | None:
        binding: dict[str, Formula] = {}
        if not _unify(self.pattern, f, set(self.metavariables), binding):
            return None
        if self.atoms_only and not all(isinstance(v, Atom) for v in binding.values()):
            return None
        return binding


class _LeivantSchema(Schema):
    """``[]A -> [](A^l)``; the translation is not a substitution instance."""

    def instantiate(self, *args: Formula) -> Formula:
        (a,) = args
        return Imp(Box(a), Box(leivant_translate(a)))

    def match(self, f: Formula) -> dict[str, Formula] | None:
        if (isinstance(f, Imp) and isinstance(f.left, Box) and isinstance(f.right, Box)
                and f.right.body == leivant_translate(f.left.body)):
            return {"a": f.left.body}
        return None


def _unify(pattern: Formula, f: Formula, metas: set[str], binding: dict) -> bool:
    if isinstance(pattern, Atom) and pattern.name in metas:
        bound = binding.get(pattern.name)
        if bound is None:
            binding[pattern.name] = f
            return True
        return bound == f
    if type(pattern) is not type(f):
        return False
    if isinstance(pattern, (Bot, Top)):
        return True
    if isinstance(pattern, Atom):
        return pattern.name == f.name
    if isinstance(pattern, Box):
        return _unify(pattern.body, f.body, metas, binding)
    return (_unify(pattern.left, f.left, metas, binding)
            and _unify(pattern.right, f.right, metas, binding))


def _schema(name, text, metas, atoms_only=False):
    return Schema(name, parse(text), metas, atoms_only)


SCHEMATA: dict[str, Schema] = {
    "K": _schema("K", "[](a -> b) -> ([]a -> []b)", ("a", "b")),
    "4": _schema("4", "[]a -> [][]a", ("a",)),
    "L": _schema("L", "[]([]a -> a) -> []a", ("a",)),
    "CP": _schema("CP", "a -> []a", ("a",)),
    "CP_a": _schema("CP_a", "a -> []a", ("a",), atoms_only=True),
    "Le": _schema("Le", "[](b | c) -> []([]b | c)", ("b", "c")),
    "Le+": _LeivantSchema("Le+", Imp(Box(Atom("a")), Box(Atom("a"))), ("a",)),
}

# schemata whose instances are LC theorems; used as a cheap certificate
LC_CERTIFICATES = ("K", "4", "L", "CP", "Le")


def match(f: Formula, names: Iterable[str] = LC_CERTIFICATES) -> str | None:
    """Name of the first listed schema that ``f`` instantiates, if any."""
    for name in names:
        if SCHEMATA[name].match(f) is not None:
            return name
    return None


def instances(name: str, formulas: Iterable[Formula]) -> Iterator[Formula]:
    """Instances of a schema with every metavariable drawn from ``formulas``.

    Two-variable schemata get all ordered pairs.
    """
    schema = SCHEMATA[name]
    pool = list(formulas)
    if schema.atoms_only:
        pool = [f for f in pool if isinstance(f, Atom)]
    if len(schema.metavariables) == 1:
        for a in pool:
            yield schema.instantiate(a)
    else:
        for a in pool:
            for b in pool:
                yield schema.instantiate(a, b)
