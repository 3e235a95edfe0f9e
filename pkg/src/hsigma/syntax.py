"""ASCII concrete syntax for formulas.

Grammar (whitespace insignificant)::

    formula := iff
    iff     := imp ("<->" imp)*          left-associative
    imp     := or ("->" imp)?            right-associative
    or      := and ("|" and)*            left-associative
    and     := unary ("&" unary)*        left-associative
    unary   := "~" unary | "[]" unary | atom
    atom    := ident | "false" | "0" | "true" | "1" | "(" formula ")"
    ident   := [a-z][a-zA-Z0-9_]*
"""

from __future__ import annotations

import re

from .formula import BOT, TOP, And, Atom, Bot, Box, Formula, Imp, Or, Top, iff, neg

__all__ = ["ParseError", "parse", "to_text"]


class ParseError(ValueError):
    """Syntax error with the offending position and the expected tokens."""

    def __init__(self, text: str, position: int, expected: set[str]):
        self.text = text
        self.position = position
        self.expected = frozenset(expected)
        found = text[position:position + 10] or "end of input"
        super().__init__(
            f"syntax error at position {position} (near {found!r}); "
            f"expected one of: {', '.join(sorted(self.expected))}"
        )


_TOKEN = re.compile(r"\s*(?:(<->|->|\[\]|[~&|()])|([a-z][a-zA-Z0-9_]*)|([01]))")
_KEYWORDS = {"false": BOT, "true": TOP, "0": BOT, "1": TOP}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(text, pos, {"formula token"})
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("op", m.group(1), start))
        elif m.group(2):
            word = m.group(2)
            kind = "const" if word in _KEYWORDS else "ident"
            tokens.append((kind, word, start))
        else:
            tokens.append(("const", m.group(3), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    _ATOM_START = {"identifier", "false", "true", "0", "1", "(", "~", "[]"}

    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def accept(self, op: str) -> bool:
        kind, value, _ = self.tokens[self.pos]
        if kind == "op" and value == op:
            self.pos += 1
            return True
        return False

    def fail(self, expected):
        raise ParseError(self.text, self.peek()[2], set(expected))

    def parse(self) -> Formula:
        f = self.iff()
        if self.peek()[0] != "end":
            self.fail({"<->", "->", "|", "&", "end of input"})
        return f

    def iff(self) -> Formula:
        f = self.imp()
        while self.accept("<->"):
            f = iff(f, self.imp())
        return f

    def imp(self) -> Formula:
        f = self.disj()
        if self.accept("->"):
            return Imp(f, self.imp())
        return f

    def disj(self) -> Formula:
        f = self.conj()
        while self.accept("|"):
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.accept("&"):
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        if self.accept("~"):
            return neg(self.unary())
        if self.accept("[]"):
            return Box(self.unary())
        return self.atom()

    def atom(self) -> Formula:
        kind, value, _ = self.peek()
        if kind == "ident":
            self.pos += 1
            return Atom(value)
        if kind == "const":
            self.pos += 1
            return _KEYWORDS[value]
        if self.accept("("):
            f = self.iff()
            if not self.accept(")"):
                self.fail({")", "<->", "->", "|", "&"})
            return f
        self.fail(self._ATOM_START)


def parse(text: str) -> Formula:
    """Parse ``text`` into a :class:`Formula`; raises :class:`ParseError`."""
    return _Parser(text).parse()


# precedence levels for printing
_IMP, _OR, _AND, _UNARY = 1, 2, 3, 4


def _render(f: Formula) -> tuple[str, int]:
    if isinstance(f, Atom):
        return f.name, _UNARY
    if isinstance(f, Bot):
        return "false", _UNARY
    if isinstance(f, Top):
        return "true", _UNARY
    if isinstance(f, Box):
        inner, level = _render(f.body)
        return "[]" + (inner if level >= _UNARY else f"({inner})"), _UNARY
    if isinstance(f, Imp) and isinstance(f.right, Bot):
        inner, level = _render(f.left)
        return "~" + (inner if level >= _UNARY else f"({inner})"), _UNARY
    left, lvl = _render(f.left)
    right, rvl = _render(f.right)
    if isinstance(f, Imp):
        # right-associative
        if lvl <= _IMP:
            left = f"({left})"
        if rvl < _IMP:
            right = f"({right})"
        return f"{left} -> {right}", _IMP
    level, sym = (_AND, "&") if isinstance(f, And) else (_OR, "|")
    # left-associative; conjunctions under a disjunction get parentheses for readability
    if lvl < level or (level == _OR and lvl == _AND):
        left = f"({left})"
    if rvl <= level or (level == _OR and rvl == _AND):
        right = f"({right})"
    return f"{left} {sym} {right}", level


def to_text(f: Formula) -> str:
    """Render with minimal parentheses (plus clarity ones around ``&`` inside ``|``)."""
    return _render(f)[0]
