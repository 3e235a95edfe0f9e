"""Decision procedures for the Sigma-1 provability logic of HA.

A formula ``A`` is decided by computing its TNNIL approximation ``A+`` and
deciding ``LC |- A+`` on finite perfect Kripke models.  The same machinery
decides LC, IPC and IPC with boxed subformulas read as atoms.
"""

from .approx import RewriteTrace, dagger, nnil_star, tnnil_minus, tnnil_plus
from .decider import (
    decide_hsigma, decide_ipc, decide_ipc_box, ipc_box_equiv, ipc_box_proves,
    lc_equiv,
)
from .formula import (
    BOT, TOP, And, Atom, Bot, Box, Formula, Imp, Or, Top, box_translate,
    boxdot, bracket, bracket_prime, classify, complexity, iff,
    leivant_translate, neg,
)
from .kripke import (
    Countermodel, KripkeModel, Status, Verdict, decide_lc, force,
    unravel_to_tree, validate_model,
)
from .syntax import ParseError, parse, to_text

__version__ = "0.1.0"

__all__ = [
    "Formula", "Bot", "Top", "Atom", "And", "Or", "Imp", "Box", "BOT", "TOP",
    "neg", "iff", "boxdot", "bracket", "bracket_prime", "classify",
    "complexity", "leivant_translate", "box_translate",
    "parse", "to_text", "ParseError",
    "nnil_star", "tnnil_plus", "tnnil_minus", "dagger", "RewriteTrace",
    "KripkeModel", "Countermodel", "Status", "Verdict", "validate_model",
    "force", "unravel_to_tree", "decide_lc",
    "decide_hsigma", "decide_ipc", "decide_ipc_box", "lc_equiv",
    "ipc_box_proves", "ipc_box_equiv",
]
