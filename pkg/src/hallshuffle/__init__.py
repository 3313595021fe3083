"""Exact computations in the shuffle algebra of the commuting stack.

Modules: ``arith`` (Laurent polynomials and factored rational functions),
``shuffle`` (star product and generators), ``symfunc`` (symmetric functions
and the slope embeddings), ``affine`` (extended affine symmetric group),
``solomon`` (group algebra ideals), ``pbw`` (slope-ordered expansions) and
``cli``.
"""

__version__ = "0.1.0"

from .arith import LaurentPoly, Monomial, RatFunc, exact_div
from .errors import (
    ContextMismatch,
    CoprimalityError,
    InvariantViolation,
    NotDivisible,
    NotInSpan,
    ParseError,
    PoleError,
    SizeBoundExceeded,
)
from .shuffle import (
    ShuffleElement,
    eccentric_pushforward,
    flag_pushforward,
    gen_H,
    gen_Hprime,
    gen_Pbar,
    gen_R,
    gen_ribbon,
    gen_Sbar,
    mat_substack_class,
    shuffle_mul,
    symmetrize,
    zeta,
)
from .symfunc import SymFuncExpr, phi_slope

__all__ = [
    "__version__",
    "LaurentPoly",
    "Monomial",
    "RatFunc",
    "exact_div",
    "ContextMismatch",
    "CoprimalityError",
    "InvariantViolation",
    "NotDivisible",
    "NotInSpan",
    "ParseError",
    "PoleError",
    "SizeBoundExceeded",
    "ShuffleElement",
    "eccentric_pushforward",
    "flag_pushforward",
    "gen_H",
    "gen_Hprime",
    "gen_Pbar",
    "gen_R",
    "gen_ribbon",
    "gen_Sbar",
    "mat_substack_class",
    "shuffle_mul",
    "symmetrize",
    "zeta",
    "SymFuncExpr",
    "phi_slope",
]
