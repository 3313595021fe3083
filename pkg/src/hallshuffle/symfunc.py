"""Symmetric functions over Q(q1, q2) stored in the barred power-sum basis.

Barred bases (``pbar``, ``ebar``, ``hbar``, ``sbar``, barred ribbons) are the
classical ones.  Their modified counterparts come from the ring automorphism
``p_d = pbar_d * (1 - q1^d)``.  ``phi_slope`` sends ``pbar_d`` to the slope
``m/n`` power-sum generator of the shuffle algebra.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import factorial, gcd
from numbers import Rational

from . import linalg
from .arith import LaurentPoly, RatFunc
from .errors import CoprimalityError
from .shuffle import ShuffleElement, gen_Pbar, shuffle_mul

__all__ = [
    "QVARS",
    "SymFuncExpr",
    "partitions",
    "z_coeff",
    "pbar",
    "p",
    "ebar",
    "hbar",
    "h",
    "sbar",
    "schur",
    "ribbon",
    "ribbon_by_recursion",
    "ribbon_composition",
    "composition_signs",
    "plethysm_q",
    "BASES",
    "basis_element",
    "basis_convert",
    "from_basis",
    "e_to_ribbon",
    "phi_slope",
    "phi_slope_graded",
    "frobenius_char",
    "cycle_type",
]

QVARS = ("q1", "q2")
BARRED, MODIFIED = "barred", "modified"


def _q(x) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, LaurentPoly):
        return RatFunc.from_poly(x)
    return RatFunc.const(QVARS, x)


def _one_minus_q1(d, power=1):
    return RatFunc.binomial(QVARS, (d, 0), power)


@lru_cache(maxsize=None)
def partitions(d: int, maxpart: int | None = None) -> tuple:
    """Partitions of ``d`` in reverse lexicographic order."""
    if maxpart is None:
        maxpart = d
    if d == 0:
        return ((),)
    out = []
    for k in range(min(d, maxpart), 0, -1):
        for rest in partitions(d - k, k):
            out.append((k,) + rest)
    return tuple(out)


def z_coeff(mu) -> int:
    """Size of the centralizer of a permutation of cycle type ``mu``."""
    out = 1
    for part, mult in Counter(mu).items():
        out *= part**mult * factorial(mult)
    return out


def _part(mu):
    mu = tuple(sorted((int(x) for x in mu), reverse=True))
    if any(x <= 0 for x in mu):
        raise ValueError(f"partition parts must be positive: {mu}")
    return mu


class SymFuncExpr:
    """Finite sum ``sum_mu c_mu pbar_mu`` with coefficients in Q(q1, q2).

    ``flag`` records whether the expression was built in barred or modified
    terms.  It is a label only: equality and arithmetic look at the
    power-sum coefficients.
    """

    __slots__ = ("terms", "flag")

    def __init__(self, terms=None, flag=BARRED):
        clean = {}
        for mu, c in (terms or {}).items():
            c = _q(c)
            if not c.is_zero():
                mu = _part(mu)
                clean[mu] = clean[mu] + c if mu in clean else c
        self.terms = {mu: c for mu, c in clean.items() if not c.is_zero()}
        if flag not in (BARRED, MODIFIED):
            raise ValueError(f"flag must be barred or modified, got {flag!r}")
        self.flag = flag

    @classmethod
    def scalar(cls, c):
        return cls({(): c})

    @classmethod
    def zero(cls):
        return cls({})

    def degrees(self):
        return sorted({sum(mu) for mu in self.terms})

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def degree(self):
        ds = self.degrees()
        if len(ds) > 1:
            raise ValueError("expression is not homogeneous")
        return ds[0] if ds else 0

    def homogeneous_part(self, d):
        return SymFuncExpr({mu: c for mu, c in self.terms.items() if sum(mu) == d}, self.flag)

    def coefficient(self, mu):
        return self.terms.get(_part(mu), RatFunc.zero(QVARS))

    def is_zero(self):
        return not self.terms

    def _flag(self, other):
        return self.flag if self.flag == other.flag else BARRED

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        t = dict(self.terms)
        for mu, c in other.terms.items():
            t[mu] = t[mu] + c if mu in t else c
        return SymFuncExpr(t, self._flag(other))

    __radd__ = __add__

    def __neg__(self):
        return SymFuncExpr({mu: -c for mu, c in self.terms.items()}, self.flag)

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        t = {}
        for mu, a in self.terms.items():
            for nu, b in other.terms.items():
                key = _part(mu + nu)
                c = a * b
                t[key] = t[key] + c if key in t else c
        return SymFuncExpr(t, self._flag(other))

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = SymFuncExpr.scalar(1)
        for _ in range(k):
            out = out * self
        out.flag = self.flag
        return out

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if set(other.terms) - {()}:
            raise ValueError("can only divide by scalars")
        c = other.terms.get(())
        if c is None:
            raise ZeroDivisionError("division by zero")
        return self * SymFuncExpr({(): c.inv()})

    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def with_flag(self, flag):
        return SymFuncExpr(self.terms, flag)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mu in sorted(self.terms, key=lambda m: (sum(m), m)):
            name = "*".join(f"pbar{k}" for k in mu) or "1"
            parts.append(f"({self.terms[mu]})*{name}")
        return " + ".join(parts)

    def __repr__(self):
        return f"SymFuncExpr[{self.flag}]({self})"

    def latex(self):
        if not self.terms:
            return "0"
        parts = []
        for mu in sorted(self.terms, key=lambda m: (sum(m), m)):
            name = " ".join(f"\\bar{{p}}_{{{k}}}" for k in mu)
            parts.append(f"\\left({self.terms[mu].latex()}\\right) {name}".rstrip())
        return " + ".join(parts)

    def to_json(self):
        return {
            "basis": "pbar",
            "terms": [
                {"partition": list(mu), "coeff": self.terms[mu].to_json()}
                for mu in sorted(self.terms, key=lambda m: (sum(m), m))
            ],
            "plethysm": self.flag,
        }

    @classmethod
    def from_json(cls, obj):
        if obj.get("basis", "pbar") != "pbar":
            raise ValueError("only the pbar basis is serialised")
        return cls(
            {tuple(t["partition"]): RatFunc.from_json(t["coeff"]) for t in obj["terms"]},
            obj.get("plethysm", BARRED),
        )


def _coerce(x):
    if isinstance(x, SymFuncExpr):
        return x
    if isinstance(x, (RatFunc, LaurentPoly)) or (
        isinstance(x, Rational) and not isinstance(x, bool)
    ):
        return SymFuncExpr.scalar(x)
    return None


# ---------------------------------------------------------------------------
# standard elements


def pbar(d: int) -> SymFuncExpr:
    if d == 0:
        return SymFuncExpr.scalar(1)
    return SymFuncExpr({(d,): 1})


def p(d: int) -> SymFuncExpr:
    if d == 0:
        return SymFuncExpr.scalar(1).with_flag(MODIFIED)
    return SymFuncExpr({(d,): _one_minus_q1(d)}, MODIFIED)


def _sign_weighted(d, signed):
    t = {}
    for mu in partitions(d):
        c = Fraction(1, z_coeff(mu))
        if signed and (d - len(mu)) % 2:
            c = -c
        t[mu] = c
    return SymFuncExpr(t)


def ebar(d: int) -> SymFuncExpr:
    return _sign_weighted(d, True)


def hbar(d: int) -> SymFuncExpr:
    return _sign_weighted(d, False)


def h(d: int) -> SymFuncExpr:
    """Modified complete symmetric function."""
    return plethysm_q(hbar(d), "bar-to-modified")


def _jacobi_trudi(lam, hfun):
    lam = _part(lam)
    k = len(lam)
    if k == 0:
        return SymFuncExpr.scalar(1)
    entries = [[lam[i] - i + j for j in range(k)] for i in range(k)]
    total = SymFuncExpr.zero()
    for perm in permutations(range(k)):
        idx = [entries[i][perm[i]] for i in range(k)]
        if any(x < 0 for x in idx):
            continue
        term = SymFuncExpr.scalar(_perm_sign(perm))
        for x in idx:
            term = term * hfun(x)
        total = total + term
    return total


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


@lru_cache(maxsize=None)
def _hbar_cached(d):
    return hbar(d) if d else SymFuncExpr.scalar(1)


def sbar(lam) -> SymFuncExpr:
    """Barred Schur function via Jacobi-Trudi."""
    return _jacobi_trudi(lam, _hbar_cached)


def schur(lam) -> SymFuncExpr:
    """Modified Schur function."""
    return plethysm_q(sbar(lam), "bar-to-modified")


# ---------------------------------------------------------------------------
# ribbons


def _norm_signs(eps):
    out = []
    for s in eps:
        if s in ("+", 1):
            out.append("+")
        elif s in ("-", -1, "−"):
            out.append("-")
        else:
            raise ValueError(f"bad sign {s!r}")
    return tuple(out)


def ribbon_composition(eps):
    """Row lengths of the ribbon: a '+' continues the row, a '-' starts a new one."""
    rows = [1]
    for s in _norm_signs(eps):
        if s == "+":
            rows[-1] += 1
        else:
            rows.append(1)
    return tuple(rows)


def composition_signs(alpha):
    out = []
    for i, a in enumerate(alpha):
        if i:
            out.append("-")
        out += ["+"] * (a - 1)
    return tuple(out)


def _coarsenings(alpha):
    k = len(alpha)
    for cuts in product((0, 1), repeat=max(k - 1, 0)):
        parts, cur = [], alpha[0]
        for a, c in zip(alpha[1:], cuts):
            if c:
                parts.append(cur)
                cur = a
            else:
                cur += a
        parts.append(cur)
        yield tuple(parts)


@lru_cache(maxsize=None)
def _ribbon_bar(eps):
    alpha = ribbon_composition(eps)
    total = SymFuncExpr.zero()
    for beta in _coarsenings(alpha):
        term = SymFuncExpr.scalar((-1) ** (len(alpha) - len(beta)))
        for b in beta:
            term = term * _hbar_cached(b)
        total = total + term
    return total


def ribbon(eps, kind: str = BARRED) -> SymFuncExpr:
    """Ribbon skew Schur function of the sign sequence ``eps``."""
    base = _ribbon_bar(_norm_signs(eps))
    if kind == BARRED:
        return base
    if kind == MODIFIED:
        return plethysm_q(base, "bar-to-modified")
    raise ValueError(f"kind must be barred or modified, got {kind!r}")


@lru_cache(maxsize=None)
def _ribbon_rec(eps):
    if "-" not in eps:
        return _hbar_cached(len(eps) + 1)
    i = eps.index("-")
    left, right = eps[:i], eps[i + 1:]
    plus = eps[:i] + ("+",) + eps[i + 1:]
    return _ribbon_rec(left) * _ribbon_rec(right) - _ribbon_rec(plus)


def ribbon_by_recursion(eps) -> SymFuncExpr:
    """Barred ribbon from the product rule and the all-plus case alone."""
    return _ribbon_rec(_norm_signs(eps))


# ---------------------------------------------------------------------------
# plethysm and bases


def plethysm_q(f: SymFuncExpr, direction: str) -> SymFuncExpr:
    """Apply ``pbar_d -> pbar_d (1 - q1^d)`` or its inverse."""
    if direction == "bar-to-modified":
        sign, flag = 1, MODIFIED
    elif direction == "modified-to-bar":
        sign, flag = -1, BARRED
    else:
        raise ValueError(f"unknown direction {direction!r}")
    t = {}
    for mu, c in f.terms.items():
        for k in mu:
            c = c * _one_minus_q1(k, sign)
        t[mu] = c
    return SymFuncExpr(t, flag)


def _product_basis(single):
    def elem(lam):
        out = SymFuncExpr.scalar(1)
        for k in lam:
            out = out * single(k)
        return out

    return elem


_BARRED_BASES = {
    "pbar": _product_basis(pbar),
    "ebar": _product_basis(ebar),
    "hbar": _product_basis(hbar),
    "sbar": sbar,
    "ribbon": lambda lam: ribbon(composition_signs(lam)),
}
_MODIFIED_BASES = {"p": "pbar", "h": "hbar", "s": "sbar", "ribbon_modified": "ribbon"}
BASES = tuple(_BARRED_BASES) + tuple(_MODIFIED_BASES)


def basis_element(basis, lam):
    if basis in _BARRED_BASES:
        return _BARRED_BASES[basis](_part(lam))
    if basis in _MODIFIED_BASES:
        return plethysm_q(_BARRED_BASES[_MODIFIED_BASES[basis]](_part(lam)), "bar-to-modified")
    raise ValueError(f"unknown basis {basis!r}; choose from {BASES}")


@lru_cache(maxsize=None)
def _inverse_matrix(basis, d):
    parts = partitions(d)
    cols = []
    for lam in parts:
        el = _BARRED_BASES[basis](lam)
        cols.append([_rational(el.coefficient(mu)) for mu in parts])
    A = [[cols[j][i] for j in range(len(parts))] for i in range(len(parts))]
    return linalg.inverse(A)


def _rational(c: RatFunc):
    if c.is_zero():
        return Fraction(0)
    return Fraction(c.to_laurent().constant_value())


def basis_convert(f: SymFuncExpr, target: str) -> dict:
    """Coefficients of ``f`` in ``target``: a map partition -> RatFunc."""
    if target in _MODIFIED_BASES:
        return basis_convert(plethysm_q(f, "modified-to-bar"), _MODIFIED_BASES[target])
    if target not in _BARRED_BASES:
        raise ValueError(f"unknown basis {target!r}; choose from {BASES}")
    out = {}
    for d in f.degrees():
        parts = partitions(d)
        inv = _inverse_matrix(target, d)
        vec = [f.coefficient(mu) for mu in parts]
        for i, lam in enumerate(parts):
            acc = RatFunc.zero(QVARS)
            for j, x in enumerate(inv[i]):
                if x and not vec[j].is_zero():
                    acc = acc + vec[j] * x
            if not acc.is_zero():
                out[lam] = acc
    return out


def from_basis(coeffs: dict, basis: str) -> SymFuncExpr:
    total = SymFuncExpr.zero()
    for lam, c in coeffs.items():
        total = total + basis_element(basis, lam) * _q(c)
    return total


def e_to_ribbon(d: int) -> SymFuncExpr:
    """Signed ribbon sum with q1-weights, divided by (1-q1)...(1-q1^d)."""
    if d < 1:
        raise ValueError("d must be positive")
    total = SymFuncExpr.zero()
    for eps in product("+-", repeat=d - 1):
        w = sum(i for i, s in enumerate(eps, start=1) if s == "+")
        total = total + ribbon(eps, MODIFIED) * RatFunc.monomial(QVARS, (w, 0))
    den = RatFunc.one(QVARS)
    for i in range(1, d + 1):
        den = den * _one_minus_q1(i)
    return (total / den).with_flag(BARRED)


# ---------------------------------------------------------------------------
# slope embedding


def _check_slope(m, n):
    if n < 1:
        raise ValueError("n must be positive")
    if gcd(m, n) != 1:
        raise CoprimalityError(m, n)


@lru_cache(maxsize=None)
def _phi_monomial(m, n, mu):
    if not mu:
        return ShuffleElement.unit()
    head = gen_Pbar((m, n, mu[0]))
    if len(mu) == 1:
        return head
    return shuffle_mul(head, _phi_monomial(m, n, mu[1:]))


def phi_slope(m: int, n: int, f: SymFuncExpr) -> ShuffleElement:
    """Image of a homogeneous ``f`` under the slope ``m/n`` embedding."""
    _check_slope(m, n)
    if not f.is_homogeneous():
        raise ValueError("phi_slope needs a homogeneous input; use phi_slope_graded")
    d = f.degree()
    total = ShuffleElement.zero(n * d)
    for mu, c in sorted(f.terms.items()):
        total = total + _phi_monomial(m, n, mu).scale(c)
    return total


def phi_slope_graded(m: int, n: int, f: SymFuncExpr) -> dict:
    """``{degree: image}`` for a sum of homogeneous pieces."""
    _check_slope(m, n)
    return {d: phi_slope(m, n, f.homogeneous_part(d)) for d in f.degrees()}


# ---------------------------------------------------------------------------
# Frobenius characteristic


def cycle_type(perm) -> tuple:
    """Cycle type of a permutation in one-line notation (0- or 1-based)."""
    base = min(perm) if perm else 0
    perm = [x - base for x in perm]
    seen = [False] * len(perm)
    out = []
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            out.append(length)
    return tuple(sorted(out, reverse=True))


def frobenius_char(chi, n: int | None = None) -> SymFuncExpr:
    """``sum_mu chi(mu) pbar_mu / z_mu``.

    ``chi`` is a dict from cycle types to values, or a callable on cycle
    types.
    """
    if isinstance(chi, dict):
        table = {_part(k): v for k, v in chi.items()}
        if n is None:
            n = sum(next(iter(table))) if table else 0
        get = table.__getitem__
    else:
        if n is None:
            raise ValueError("n is required when chi is a callable")
        get = chi
    return SymFuncExpr(
        {mu: Fraction(1, z_coeff(mu)) * Fraction(get(mu)) for mu in partitions(n)}
    )
