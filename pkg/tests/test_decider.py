import pytest

from hsigma.approx import nnil_star, tnnil_plus
from hsigma.decider import (
    decide_hsigma, decide_ipc, decide_ipc_box, ipc_box_equiv, ipc_box_proves,
    lc_equiv,
)
from hsigma.formula import TOP, Atom, Imp, bracket
from hsigma.kripke import Status, decide_lc, force, validate_model
from hsigma.syntax import parse
from oracles import g4ip
from strategies import corpus

P, R = Status.PROVABLE, Status.REFUTED

HSIGMA = [
    ("[](p | q) -> []p | []q", R),
    ("[](p | q) -> []([]p | q)", P),
    ("[]~~[]p -> [][]p", P),
    ("[](~~[]p -> []p) -> []([]p | ~[]p)", P),
    ("~~[](~~p -> p) -> [](~~p -> p)", R),
    ("p -> []p", P),
    ("(p -> q) -> [](p -> q)", R),
    ("[]p -> [][]p", P),
    ("[]([]p -> p) -> []p", P),
    ("[]p -> p", R),
    ("~~[]false", R),
]


@pytest.mark.parametrize("text, status", HSIGMA)
def test_hsigma_fixtures(text, status):
    f = parse(text)
    v = decide_hsigma(f)
    assert v.status is status
    assert v.approx == tnnil_plus(f) and v.formula == f and v.target == v.approx
    assert decide_lc(tnnil_plus(f)).status is v.status
    if v.refuted:
        m, node = v.countermodel
        assert validate_model(m, True) == [] and not force(m, node, v.approx)


def test_hsigma_refutation_of_double_negated_box_uses_three_nodes():
    v = decide_hsigma(parse("~~[](~~p -> p) -> [](~~p -> p)"))
    assert v.countermodel.model.size == 3


def test_lc_theorem_outside_hsigma():
    f = parse("~~[]false")
    assert decide_lc(f).provable
    v = decide_hsigma(f)
    assert v.refuted and v.approx == parse("[]false")


def test_cp_for_implications_fails_only_after_approximation():
    f = parse("(p -> q) -> [](p -> q)")
    assert decide_lc(f).provable
    assert decide_hsigma(f).refuted


@pytest.mark.parametrize("text, status", [
    ("p -> p", P),
    ("p | ~p", R),
    ("((p -> q) -> p) -> p", R),
    ("~~(p | ~p)", P),
    ("(p -> q) | (q -> p)", R),
    ("false -> p", P),
])
def test_ipc(text, status):
    v = decide_ipc(parse(text))
    assert v.status is status
    if v.refuted:
        m, node = v.countermodel
        assert not force(m, node, v.formula)


def test_ipc_rejects_modal_input():
    with pytest.raises(ValueError):
        decide_ipc(parse("[]p -> p"))


def test_ipc_agrees_with_sequent_prover():
    for f in corpus(12, 400, atoms=("p", "q", "r"), depth=4, modal=False):
        assert decide_ipc(f).provable == g4ip(f), f


@pytest.mark.parametrize("text, status", [
    ("[]p -> []p", P),
    ("[]p -> []q", R),
    ("[](p -> q) -> [](p -> q) | r", P),
    ("[]p | ~[]p", R),
])
def test_ipc_box(text, status):
    assert decide_ipc_box(parse(text)).status is status


def test_ipc_box_star_implies_formula():
    for f in corpus(13, 80, depth=3):
        assert decide_ipc_box(Imp(nnil_star(f), f)).provable


def test_equivalences():
    p = Atom("p")
    f = parse("(p -> q) -> [](r | p)")
    assert lc_equiv(f, f).provable
    v = lc_equiv(p, parse("[]p"))
    assert v.refuted and v.target == parse("[]p -> p")
    assert ipc_box_proves(TOP).provable
    assert ipc_box_equiv(bracket(p, parse("q -> r")), parse("p -> q -> r")).provable
    assert ipc_box_equiv(parse("[]p"), parse("[]q")).refuted


def test_modus_ponens_sanity():
    fixtures = [parse(t) for t, _ in HSIGMA]
    proved = [f for f in fixtures if decide_hsigma(f).provable]
    for a in proved:
        for b in fixtures:
            if decide_hsigma(Imp(a, b)).provable:
                assert not decide_hsigma(b).refuted
