"""Provability in H-sigma, LC, IPC and IPC with boxes as atoms.

Everything reduces to :func:`hsigma.kripke.decide_lc`:

* H-sigma proves ``A`` iff LC proves ``A+``;
* IPC proves a box-free ``A`` iff LC proves ``[]false -> A`` (LC is
  conservative over IPC, and adding ``[]false`` kills every box);
* IPC with boxed subformulas read as atoms decides the box-free skeleton.
"""

from __future__ import annotations

from .approx import tnnil_plus
from .formula import BOT, Box, Formula, Imp, decompose_outer_boxes, iff, is_modal
from .kripke import DEFAULT_CAP, Status, Verdict, decide_lc

__all__ = [
    "decide_hsigma", "decide_lc", "decide_ipc", "decide_ipc_box",
    "lc_equiv", "ipc_box_proves", "ipc_box_equiv",
]


def decide_hsigma(f: Formula, cap: int | None = DEFAULT_CAP, **options) -> Verdict:
    """Decide ``f`` in the Sigma-1 provability logic of HA via ``LC |- f+``."""
    plus = tnnil_plus(f)
    verdict = decide_lc(plus, cap, **options)
    return verdict.with_context(formula=f, approx=plus, target=plus,
                                reduction="hsigma: LC |- A+")


def decide_ipc(f: Formula, cap: int | None = DEFAULT_CAP, **options) -> Verdict:
    """Decide a box-free ``f`` in intuitionistic propositional logic.

    Raises ``ValueError`` on modal input.
    """
    if is_modal(f):
        raise ValueError(f"not a box-free formula: {f}")
    target = Imp(Box(BOT), f)
    verdict = decide_lc(target, cap, **options)
    return verdict.with_context(formula=f, target=target,
                                reduction="ipc: LC |- []false -> A")


def decide_ipc_box(f: Formula, cap: int | None = DEFAULT_CAP, **options) -> Verdict:
    """IPC with the outermost boxed subformulas treated as distinct atoms."""
    dec = decompose_outer_boxes(f)
    verdict = decide_ipc(dec.skeleton, cap, **options)
    return verdict.with_context(formula=f, reduction="ipcbox: IPC |- skeleton")


def _both(first: Verdict, second_thunk, formula: Formula, reduction: str) -> Verdict:
    if first.status is not Status.PROVABLE:
        return first.with_context(formula=formula, reduction=reduction + ", forward direction")
    second = second_thunk()
    if second.status is not Status.PROVABLE:
        return second.with_context(formula=formula, reduction=reduction + ", backward direction")
    return second.with_context(formula=formula, reduction=reduction,
                               search_cap=min(first.search_cap, second.search_cap),
                               completeness_bound=max(first.completeness_bound,
                                                      second.completeness_bound))


def lc_equiv(a: Formula, b: Formula, cap: int | None = DEFAULT_CAP, **options) -> Verdict:
    """Provable iff LC proves both ``a -> b`` and ``b -> a``.

    A failing direction is reported with its countermodel; its ``target``
    says which implication was refuted.
    """
    return _both(decide_lc(Imp(a, b), cap, **options),
                 lambda: decide_lc(Imp(b, a), cap, **options),
                 iff(a, b), "lc equivalence")


def ipc_box_proves(a: Formula, cap: int | None = DEFAULT_CAP, **options) -> Verdict:
    return decide_ipc_box(a, cap, **options)


def ipc_box_equiv(a: Formula, b: Formula, cap: int | None = DEFAULT_CAP, **options) -> Verdict:
    return _both(decide_ipc_box(Imp(a, b), cap, **options),
                 lambda: decide_ipc_box(Imp(b, a), cap, **options),
                 iff(a, b), "ipcbox equivalence")
