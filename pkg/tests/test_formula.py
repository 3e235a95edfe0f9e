import pytest
from hypothesis import given, settings

from hsigma.formula import (
    BOT, TOP, And, Atom, Box, Imp, Or, atoms, big_and, big_or, box_translate,
    boxdot, bracket, bracket_prime, classify, complexity, decompose_outer_boxes,
    iff, is_modal, is_nnil, leivant_translate, neg, replace_subformula, rho,
    sub, substitute,
)
from hsigma.syntax import parse
from strategies import formulas

p, q, r, s = Atom("p"), Atom("q"), Atom("r"), Atom("s")


def test_structural_equality_and_hash():
    a = Imp(And(p, q), Box(r))
    b = Imp(And(Atom("p"), Atom("q")), Box(Atom("r")))
    assert a == b and hash(a) == hash(b)
    assert a != Imp(And(q, p), Box(r))
    assert Box(p) != p
    assert {a, b} == {a}


def test_sugar_is_not_a_constructor():
    assert neg(p) == Imp(p, BOT)
    assert iff(p, q) == And(Imp(p, q), Imp(q, p))
    assert boxdot(p) == And(p, Box(p))
    assert Box(p).inner == p


def test_sub_atoms_and_modality():
    f = parse("[](p -> q) & r")
    assert sub(f) == {f, Box(Imp(p, q)), Imp(p, q), p, q, r}
    assert atoms(f) == {"p", "q", "r"}
    assert is_modal(f) and not is_modal(parse("p -> q | r"))


def test_big_and_or_simplify():
    assert big_and([]) == TOP and big_or([]) == BOT
    assert big_and([p, TOP, p]) == p
    assert big_and([q, BOT, p]) == BOT
    assert big_or([q, TOP]) == TOP
    assert big_or([q, p, BOT]) == Or(p, q)
    assert big_and([Imp(p, q), p]) == And(p, Imp(p, q))


@pytest.mark.parametrize("text, expected", [
    ("p", (0, 0, 0, 0)),
    ("p -> q", (1, 0, 1, 1)),
    ("(p -> q) -> r", (2, 0, 2, 2)),
    ("~~p", (2, 0, 2, 2)),
    ("(p | q) -> r", (1, 0, 1, 2)),
    ("[](p -> q)", (0, 1, 0, 0)),
    ("[]~~[]p -> [][]p", (1, 2, 1, 1)),
    ("~~[](~~p -> p) -> [](~~p -> p)", (3, 1, 3, 3)),
    ("((p -> q) -> r) -> s", (3, 0, 3, 3)),
    ("(p -> q) & (r -> s)", (1, 0, 1, 3)),
])
def test_complexity_values(text, expected):
    assert tuple(complexity(parse(text))) == expected


def test_measure_order_drops_rho():
    m = complexity(parse("(p -> q) -> r"))
    assert m.order == (0, 2, 2)
    assert m.rho == 2 and m.i == 2


@pytest.mark.parametrize("text, flags", [
    ("p | [](p -> q)", (True, True, True, True)),
    ("(p -> q) -> r", (False, False, False, True)),
    ("(p -> q) -> []r", (False, False, False, True)),
    ("p -> q", (False, True, True, True)),
    ("[]((p -> q) -> r)", (True, True, False, False)),
    ("[](p -> q) -> r", (False, True, True, True)),
    ("([](p -> q) -> r) -> s", (False, False, False, True)),
    ("[]([](p -> q) -> r)", (True, True, True, True)),
])
def test_classes(text, flags):
    assert tuple(classify(parse(text))) == flags


@settings(max_examples=300, deadline=None)
@given(formulas())
def test_nnil_flag_matches_rho(f):
    assert is_nnil(f) == (rho(f) <= 1)


@settings(max_examples=200, deadline=None)
@given(formulas())
def test_box_depth_bounds_subformulas(f):
    d = complexity(f).d
    assert all(complexity(g).d <= d for g in sub(f))
    assert all(v >= 0 for v in complexity(f))


def test_bracket_operators():
    a = parse("(p -> q) -> r")
    b = parse("(p -> q) | s")
    assert bracket(a, b) == Or(Imp(a, Imp(p, q)), s)
    # [a]'(p -> q) = (a[q / p -> q] & p) -> q
    assert bracket_prime(a, b) == Or(Imp(And(parse("q -> r"), p), q), s)
    assert bracket(p, Imp(q, r)) == Imp(p, Imp(q, r))


def test_replace_and_substitute():
    f = parse("(p -> q) & [](p -> q)")
    assert replace_subformula(f, Imp(p, q), r) == And(r, Box(r))
    assert substitute(parse("p -> []p"), {"p": Imp(q, r)}) == parse("(q -> r) -> [](q -> r)")
    # simultaneous: p and q swap
    assert substitute(Imp(p, q), {"p": q, "q": p}) == Imp(q, p)


@pytest.mark.parametrize("text, expected", [
    ("p", "p"),
    ("p | q", "(p & []p) | (q & []q)"),
    ("p -> q | r", "p -> (q & []q) | (r & []r)"),
    ("(p -> q) -> r | s", "(p -> q) -> r | s"),
    ("[](p | q)", "[](p | q)"),
])
def test_leivant_translation(text, expected):
    assert leivant_translate(parse(text)) == parse(expected)


@pytest.mark.parametrize("text, expected", [
    ("p", "p & []p"),
    ("false", "false & []false"),
    ("p -> q", "(p & []p -> q & []q) & [](p & []p -> q & []q)"),
    ("[]p", "[](p & []p)"),
])
def test_box_translation(text, expected):
    assert box_translate(parse(text)) == parse(expected)


def test_decompose_outer_boxes():
    f = parse("[]p -> ([]p | [](q -> []r))")
    dec = decompose_outer_boxes(f)
    assert dec.placeholders == ("_bx0", "_bx1")
    assert dec.bodies == (p, parse("q -> []r"))
    x0, x1 = Atom("_bx0"), Atom("_bx1")
    assert dec.skeleton == Imp(x0, Or(x0, x1))
    assert not is_modal(dec.skeleton)
    assert dec.refill() == f
    assert dec.refill(lambda b: And(b, b)) == parse("[](p & p) -> [](p & p) | []((q -> []r) & (q -> []r))")


def test_placeholders_avoid_existing_atoms():
    f = Imp(Atom("_bx0"), Box(p))
    dec = decompose_outer_boxes(f)
    assert dec.placeholders == ("_bx1",)
    assert dec.refill() == f
