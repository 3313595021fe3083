"""Exact Laurent polynomial and rational function arithmetic.

Everything here works over a fixed, ordered tuple of variable names (the
*context*).  Exponent vectors are plain tuples of ints aligned with the
context, and coefficients are ``int`` or :class:`fractions.Fraction`.

:class:`RatFunc` keeps its denominator as a product of binomials
``(1 - m)^k`` for monomials ``m``.  Every denominator the shuffle algebra
formulas produce has that shape, so no multivariate gcd is ever needed:
cancellation is done by trial division against the tracked binomials.
"""
from __future__ import annotations

import heapq
from fractions import Fraction
from itertools import chain
from math import gcd
from numbers import Rational
from operator import add, sub

from .errors import ContextMismatch, NotDivisible, PoleError

__all__ = [
    "Monomial",
    "LaurentPoly",
    "RatFunc",
    "exact_div",
    "poly_add",
    "poly_mul",
    "ratfunc_arith",
    "substitute",
    "latex_var",
]


def _c(x):
    """Normalise a coefficient: integral Fractions become ints."""
    if type(x) is Fraction and x.denominator == 1:
        return x.numerator
    return x


def _is_scalar(x) -> bool:
    return isinstance(x, Rational) and not isinstance(x, bool)


def _neg(e):
    return tuple(-a for a in e)


def _scale(e, k):
    return tuple(a * k for a in e)


def _canon(v):
    """Orient a binomial exponent vector.

    Returns ``(flipped, key)`` with ``key`` having a positive first nonzero
    entry; ``(1 - x^v) = -x^v (1 - x^-v)`` when ``flipped``.
    """
    for a in v:
        if a:
            if a > 0:
                return False, v
            return True, _neg(v)
    raise PoleError("binomial (1 - 1) is identically zero")


def latex_var(name: str) -> str:
    """``q1 -> q_1``, ``z12 -> z_{12}``; other names unchanged."""
    head = name.rstrip("0123456789")
    tail = name[len(head):]
    if head and tail:
        return f"{head}_{tail}" if len(tail) == 1 else f"{head}_{{{tail}}}"
    return name


class Monomial:
    """A Laurent monomial over a variable context, with coefficient 1."""

    __slots__ = ("vars", "exps")

    def __init__(self, vars, exps):
        self.vars = tuple(vars)
        self.exps = tuple(int(e) for e in exps)
        if len(self.exps) != len(self.vars):
            raise ValueError("exponent vector does not match the context")

    @classmethod
    def from_dict(cls, vars, mapping):
        vars = tuple(vars)
        unknown = set(mapping) - set(vars)
        if unknown:
            raise ContextMismatch(f"variables {sorted(unknown)} not in context {vars}")
        return cls(vars, [mapping.get(v, 0) for v in vars])

    @classmethod
    def one(cls, vars):
        return cls(vars, [0] * len(tuple(vars)))

    def as_dict(self):
        return {v: e for v, e in zip(self.vars, self.exps) if e}

    def is_one(self):
        return not any(self.exps)

    def __mul__(self, other):
        if not isinstance(other, Monomial):
            return NotImplemented
        if other.vars != self.vars:
            raise ContextMismatch("monomials over different contexts")
        return Monomial(self.vars, map(add, self.exps, other.exps))

    def __truediv__(self, other):
        if not isinstance(other, Monomial):
            return NotImplemented
        if other.vars != self.vars:
            raise ContextMismatch("monomials over different contexts")
        return Monomial(self.vars, map(sub, self.exps, other.exps))

    def __pow__(self, k):
        return Monomial(self.vars, _scale(self.exps, k))

    def inverse(self):
        return Monomial(self.vars, _neg(self.exps))

    def __eq__(self, other):
        return (
            isinstance(other, Monomial)
            and self.vars == other.vars
            and self.exps == other.exps
        )

    def __hash__(self):
        return hash((self.vars, self.exps))

    def __repr__(self):
        return f"Monomial({_fmt_mono(self.vars, self.exps) or '1'})"

    def to_poly(self):
        return LaurentPoly(self.vars, {self.exps: 1})


# ---------------------------------------------------------------------------
# formatting helpers


def _fmt_mono(vars, exps, *, latex=False):
    parts = []
    for v, e in zip(vars, exps):
        if not e:
            continue
        name = latex_var(v) if latex else v
        if e == 1:
            parts.append(name)
        elif latex:
            parts.append(f"{name}^{{{e}}}")
        else:
            parts.append(f"{name}^{e}")
    return (" " if latex else "*").join(parts)


def _fmt_coeff(c, *, latex=False):
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    if latex:
        return f"\\frac{{{c.numerator}}}{{{c.denominator}}}"
    return f"{c.numerator}/{c.denominator}"


def _term_order(e):
    return (sum(abs(a) for a in e), _neg(e))


def _fmt_terms(vars, terms, *, latex=False):
    if not terms:
        return "0"
    out = []
    for e in sorted(terms, key=_term_order):
        c = terms[e]
        neg = c < 0
        a = -c if neg else c
        m = _fmt_mono(vars, e, latex=latex)
        if not m:
            body = _fmt_coeff(a, latex=latex)
        elif a == 1:
            body = m
        else:
            body = _fmt_coeff(a, latex=latex) + (" " if latex else "*") + m
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


# ---------------------------------------------------------------------------
# Laurent polynomials


class LaurentPoly:
    """Sparse Laurent polynomial with exact rational coefficients.

    ``terms`` maps exponent tuples to nonzero coefficients.  Instances are
    treated as immutable; every operation returns a new object.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars, terms=None, *, _trusted=False):
        self.vars = tuple(vars)
        if _trusted:
            self.terms = terms
        else:
            clean = {}
            n = len(self.vars)
            for e, c in (terms or {}).items():
                e = tuple(e)
                if len(e) != n:
                    raise ValueError("exponent vector does not match the context")
                if c:
                    clean[e] = _c(c)
            self.terms = clean
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, vars):
        return cls(vars, {}, _trusted=True)

    @classmethod
    def const(cls, vars, c):
        vars = tuple(vars)
        c = _c(c)
        return cls(vars, {(0,) * len(vars): c} if c else {}, _trusted=True)

    @classmethod
    def one(cls, vars):
        return cls.const(vars, 1)

    @classmethod
    def var(cls, vars, name):
        vars = tuple(vars)
        if name not in vars:
            raise ContextMismatch(f"{name!r} not in context {vars}")
        e = tuple(1 if v == name else 0 for v in vars)
        return cls(vars, {e: 1}, _trusted=True)

    @classmethod
    def monomial(cls, vars, exps, c=1):
        vars = tuple(vars)
        if isinstance(exps, dict):
            exps = Monomial.from_dict(vars, exps).exps
        exps = tuple(exps)
        c = _c(c)
        return cls(vars, {exps: c} if c else {}, _trusted=True)

    @classmethod
    def gens(cls, vars):
        return tuple(cls.var(vars, v) for v in vars)

    # -- basic queries -----------------------------------------------------

    def __len__(self):
        return len(self.terms)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        if not self.terms:
            return True
        return len(self.terms) == 1 and not any(next(iter(self.terms)))

    def is_monomial(self):
        return len(self.terms) == 1

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant")
        return next(iter(self.terms.values()), 0)

    def min_exps(self):
        it = iter(self.terms)
        lo = list(next(it))
        for e in it:
            for i, a in enumerate(e):
                if a < lo[i]:
                    lo[i] = a
        return tuple(lo)

    def max_exps(self):
        it = iter(self.terms)
        hi = list(next(it))
        for e in it:
            for i, a in enumerate(e):
                if a > hi[i]:
                    hi[i] = a
        return tuple(hi)

    def degree_in(self, name):
        i = self.vars.index(name)
        return {e[i] for e in self.terms}

    def involves(self, names):
        idx = [i for i, v in enumerate(self.vars) if v in names]
        return any(e[i] for e in self.terms for i in idx)

    def is_integral(self):
        """All coefficients are integers."""
        return all(type(c) is int for c in self.terms.values())

    def coefficient(self, exps):
        if isinstance(exps, dict):
            exps = Monomial.from_dict(self.vars, exps).exps
        return self.terms.get(tuple(exps), 0)

    def sorted_terms(self):
        return sorted(self.terms.items())

    # -- equality / hashing --------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.vars == other.vars and self.terms == other.terms
        if _is_scalar(other):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.vars != self.vars:
                raise ContextMismatch(
                    f"context {self.vars} does not match {other.vars}"
                )
            return other
        if isinstance(other, Monomial):
            if other.vars != self.vars:
                raise ContextMismatch("monomial over a different context")
            return other.to_poly()
        if _is_scalar(other):
            return LaurentPoly.const(self.vars, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if len(other.terms) > len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        res = dict(a)
        for e, c in b.items():
            v = res.get(e)
            if v is None:
                res[e] = c
            else:
                v = _c(v + c)
                if v:
                    res[e] = v
                else:
                    del res[e]
        return LaurentPoly(self.vars, res, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.vars, {e: -c for e, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c):
        c = _c(c)
        if not c:
            return LaurentPoly.zero(self.vars)
        if c == 1:
            return self
        return LaurentPoly(
            self.vars, {e: _c(v * c) for e, v in self.terms.items()}, _trusted=True
        )

    def shift(self, exps):
        """Multiply by the monomial with exponent vector ``exps``."""
        exps = tuple(exps)
        if not any(exps):
            return self
        return LaurentPoly(
            self.vars,
            {tuple(map(add, e, exps)): c for e, c in self.terms.items()},
            _trusted=True,
        )

    def __mul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.terms, other.terms
        if not a or not b:
            return LaurentPoly.zero(self.vars)
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (eb, cb), = b.items()
            return self.shift(eb).scale(cb) if a is self.terms else other.shift(eb).scale(cb)
        res = {}
        get = res.get
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                e = tuple(map(add, e1, e2))
                res[e] = get(e, 0) + c1 * c2
        return LaurentPoly(
            self.vars, {e: _c(c) for e, c in res.items() if c}, _trusted=True
        )

    __rmul__ = __mul__

    def mul_binomial(self, v, power=1):
        """Multiply by ``(1 - x^v)^power`` for ``power >= 0``."""
        terms = self.terms
        for _ in range(power):
            res = dict(terms)
            for e, c in terms.items():
                f = tuple(map(add, e, v))
                x = res.get(f, 0) - c
                if x:
                    res[f] = _c(x)
                else:
                    res.pop(f, None)
            terms = res
        return LaurentPoly(self.vars, terms, _trusted=True)

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if not self.is_monomial():
                raise NotDivisible("negative power of a non-monomial")
            (e, c), = self.terms.items()
            return LaurentPoly(self.vars, {_scale(e, k): _c(Fraction(c) ** k)}, _trusted=True)
        result = LaurentPoly.one(self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if _is_scalar(other):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self.scale(Fraction(1) / Fraction(other))
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return exact_div(self, other)

    # -- structural maps -----------------------------------------------------

    def permute(self, src):
        """Reorder exponent positions: new position ``i`` takes old ``src[i]``.

        For the transposition of two variables this is the substitution that
        swaps them.
        """
        return LaurentPoly(
            self.vars,
            {tuple(e[j] for j in src): c for e, c in self.terms.items()},
            _trusted=True,
        )

    def rename(self, mapping):
        """Apply a permutation of variable names, e.g. ``{'z1': 'z2', 'z2': 'z1'}``."""
        pos = {v: i for i, v in enumerate(self.vars)}
        src = list(range(len(self.vars)))
        for a, b in mapping.items():
            src[pos[b]] = pos[a]
        if sorted(src) != list(range(len(self.vars))):
            raise ValueError("renaming is not a permutation of the context")
        return self.permute(src)

    def extend(self, vars):
        """Embed into a larger context (a superset of the current variables)."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        idx = []
        for v in vars:
            idx.append(self.vars.index(v) if v in self.vars else None)
        missing = set(self.vars) - set(vars)
        if missing:
            if self.involves(missing):
                raise ContextMismatch(f"cannot drop variables {sorted(missing)}")
        return LaurentPoly(
            vars,
            {tuple(0 if i is None else e[i] for i in idx): c for e, c in self.terms.items()},
            _trusted=True,
        )

    def substitute(self, bindings, vars=None):
        """Image under ``var -> Monomial | rational`` (result over ``vars``)."""
        return RatFunc.from_poly(self).substitute(bindings, vars).to_laurent()

    def evaluate(self, point):
        total = Fraction(0)
        vals = [Fraction(point[v]) if v in point else None for v in self.vars]
        for e, c in self.terms.items():
            t = Fraction(c)
            for x, a in zip(vals, e):
                if a:
                    if x is None:
                        raise KeyError("missing value for a variable")
                    if x == 0 and a < 0:
                        raise PoleError("negative power of zero")
                    t *= x ** a
            total += t
        return total

    def content(self):
        """``(c, m, p)`` with ``self = c * x^m * p``, p primitive.

        Primitive means: every variable has minimal exponent 0 and the
        smallest term (exponent tuple order) has coefficient 1.
        """
        if not self.terms:
            raise ValueError("content of zero")
        lo = self.min_exps()
        lead = self.terms[min(self.terms)]
        if lead == 1 and not any(lo):
            return 1, lo, self
        inv = Fraction(1) / Fraction(lead) if lead != 1 else 1
        if any(lo):
            neg = _neg(lo)
            terms = {tuple(map(add, e, neg)): _c(c * inv) for e, c in self.terms.items()}
        else:
            terms = {e: _c(c * inv) for e, c in self.terms.items()}
        return lead, lo, LaurentPoly(self.vars, terms, _trusted=True)

    # -- output --------------------------------------------------------------

    def __str__(self):
        return _fmt_terms(self.vars, self.terms)

    def __repr__(self):
        return f"LaurentPoly({self})"

    def latex(self):
        return _fmt_terms(self.vars, self.terms, latex=True)

    def to_json(self):
        return {
            "vars": list(self.vars),
            "terms": _json_terms(self.vars, self.terms),
            "denFactors": [],
        }

    @classmethod
    def from_json(cls, obj):
        rf = RatFunc.from_json(obj)
        return rf.to_laurent()


def _json_terms(vars, terms):
    out = []
    for e in sorted(terms):
        c = Fraction(terms[e])
        out.append(
            {
                "exps": {v: a for v, a in zip(vars, e) if a},
                "num": str(c.numerator),
                "den": str(c.denominator),
            }
        )
    return out


def _terms_from_json(vars, items):
    terms = {}
    for t in items:
        e = Monomial.from_dict(vars, {k: int(v) for k, v in t["exps"].items()}).exps
        c = Fraction(int(t["num"]), int(t.get("den", "1")))
        terms[e] = _c(terms.get(e, 0) + c)
    return LaurentPoly(vars, terms)


def poly_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def poly_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


# ---------------------------------------------------------------------------
# exact division


def _div_binomial(terms, v):
    """Quotient of ``terms / (1 - x^v)`` or ``None`` if it does not divide.

    Terms are grouped along lines ``base + s*v``; on each line the problem is
    univariate and the quotient coefficients are prefix sums.
    """
    k = next(i for i, a in enumerate(v) if a)
    vk = v[k]
    lines = {}
    for e, c in terms.items():
        t = e[k] // vk
        base = tuple(a - t * b for a, b in zip(e, v)) if t else e
        lines.setdefault(base, []).append((t, c))
    out = {}
    for base, items in lines.items():
        if len(items) == 1:
            return None
        items.sort()
        acc = 0
        prev = items[0][0]
        for s, c in items:
            if acc:
                for j in range(prev, s):
                    out[tuple(a + j * b for a, b in zip(base, v))] = acc
            acc = _c(acc + c)
            prev = s
        if acc:
            return None
    return out


def _grlex_key(e):
    return (sum(e), e)


def _generic_div(num, den):
    """Long division for polynomials (nonnegative exponents) in graded lex order."""
    dterms = den.terms
    dlead = max(dterms, key=_grlex_key)
    dlc = dterms[dlead]
    drest = [(e, c) for e, c in dterms.items() if e != dlead]
    rem = dict(num.terms)
    heap = [tuple(-x for x in (sum(e),) + e) for e in rem]
    heapq.heapify(heap)
    quot = {}
    while rem:
        while True:
            key = heapq.heappop(heap)
            e = tuple(-x for x in key[1:])
            if e in rem:
                break
        c = rem.pop(e)
        qe = tuple(map(sub, e, dlead))
        if min(qe) < 0:
            return None
        qc = _c(Fraction(c) / dlc) if type(c) is not int or c % dlc else c // dlc
        quot[qe] = qc
        for de, dc in drest:
            f = tuple(map(add, qe, de))
            x = rem.get(f)
            if x is None:
                rem[f] = _c(-qc * dc)
                heapq.heappush(heap, tuple(-y for y in (sum(f),) + f))
            else:
                x = _c(x - qc * dc)
                if x:
                    rem[f] = x
                else:
                    del rem[f]
    return quot


def exact_div(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    """Return ``q`` with ``q * den == num`` exactly, or raise :class:`NotDivisible`.

    Binomial divisors ``c x^a (1 - x^v)`` take a linear-time path; anything
    else is handled by graded-lex long division after shifting both operands
    to nonnegative exponents.
    """
    if num.vars != den.vars:
        raise ContextMismatch("exact_div over different contexts")
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    vars = num.vars
    if num.is_zero():
        return num
    dc, dmin, dprim = den.content()
    shift = _neg(dmin)
    if dprim.is_constant():
        return num.shift(shift).scale(Fraction(1) / Fraction(dc))
    if len(dprim.terms) == 2:
        (e1, c1), (e2, c2) = sorted(dprim.terms.items())
        if c1 == -c2:
            # dprim = c2*x^e2 * (1 - x^(e1-e2))
            v = tuple(map(sub, e1, e2))
            q = _div_binomial(num.terms, v)
            if q is None:
                raise NotDivisible(f"({den}) does not divide the numerator")
            res = LaurentPoly(vars, q, _trusted=True)
            total = tuple(map(sub, shift, e2))
            return res.shift(total).scale(Fraction(1) / (Fraction(dc) * c2))
    nmin = num.min_exps()
    npoly = num.shift(_neg(nmin))
    q = _generic_div(npoly, dprim)
    if q is None:
        raise NotDivisible(f"({den}) does not divide the numerator")
    res = LaurentPoly(vars, q, _trusted=True)
    if res * dprim != npoly:
        raise NotDivisible(f"({den}) does not divide the numerator")
    return res.shift(tuple(map(add, nmin, shift))).scale(Fraction(1) / Fraction(dc))


def _try_div_binomial(poly, v):
    q = _div_binomial(poly.terms, v)
    if q is None:
        return None
    return LaurentPoly(poly.vars, q, _trusted=True)


def _geometric(vars, v, a):
    """``1 + x^v + ... + x^((a-1)v)``."""
    return LaurentPoly(vars, {_scale(v, j): 1 for j in range(a)}, _trusted=True)


def _multiple(v, w):
    """Integer ``a >= 2`` with ``v == a*w``, else ``None``."""
    a = None
    for x, y in zip(v, w):
        if y == 0:
            if x:
                return None
            continue
        if x % y:
            return None
        r = x // y
        if a is None:
            a = r
        elif r != a:
            return None
    if a is None or a < 2:
        return None
    return a


# ---------------------------------------------------------------------------
# rational functions


class RatFunc:
    """Quotient of Laurent polynomials with a factored binomial part.

    The value is ``coeff * x^mono * num / den * prod (1 - x^v)^k`` over
    ``factors = {v: k}``.  ``num`` and ``den`` are primitive (see
    :meth:`LaurentPoly.content`) and ``den`` is ``1`` for everything the
    generator formulas produce; it only becomes nontrivial for inputs such
    as Cramer-rule quotients.  Keys ``v`` are oriented so their first
    nonzero entry is positive.
    """

    __slots__ = ("vars", "coeff", "mono", "num", "den", "factors")

    def __init__(self, vars, coeff, mono, num, den, factors):
        self.vars = vars
        self.coeff = coeff
        self.mono = mono
        self.num = num
        self.den = den
        self.factors = factors

    # -- constructors -----------------------------------------------------

    @classmethod
    def _build(cls, vars, coeff=1, mono=None, num=None, den=None, factors=None, *, cancel=True):
        vars = tuple(vars)
        zero = (0,) * len(vars)
        one = LaurentPoly.one(vars)
        coeff = _c(coeff)
        if not coeff or (num is not None and num.is_zero()):
            return cls(vars, 0, zero, one, one, {})
        rf = cls(
            vars,
            coeff,
            tuple(mono) if mono is not None else zero,
            num if num is not None else one,
            den if den is not None else one,
            dict(factors) if factors else {},
        )
        rf._normalize(cancel)
        return rf

    @classmethod
    def zero(cls, vars):
        return cls._build(vars, 0)

    @classmethod
    def one(cls, vars):
        return cls._build(vars, 1)

    @classmethod
    def const(cls, vars, c):
        return cls._build(vars, c)

    @classmethod
    def from_poly(cls, p: LaurentPoly):
        if isinstance(p, Monomial):
            p = p.to_poly()
        return cls._build(p.vars, 1, None, p)

    @classmethod
    def var(cls, vars, name):
        return cls.from_poly(LaurentPoly.var(vars, name))

    @classmethod
    def monomial(cls, vars, exps, c=1):
        if isinstance(exps, Monomial):
            exps = exps.exps
        elif isinstance(exps, dict):
            exps = Monomial.from_dict(vars, exps).exps
        return cls._build(vars, c, exps)

    @classmethod
    def binomial(cls, vars, exps, power=1, c=1):
        """``(1 - c * x^exps)^power``; tracked as a factor when ``c == 1``."""
        vars = tuple(vars)
        if isinstance(exps, Monomial):
            exps = exps.exps
        elif isinstance(exps, dict):
            exps = Monomial.from_dict(vars, exps).exps
        exps = tuple(exps)
        if c != 1:
            p = LaurentPoly.one(vars) - LaurentPoly.monomial(vars, exps, c)
            if power < 0:
                return cls.from_poly(p).inv() ** (-power)
            return cls.from_poly(p ** power)
        if not any(exps):
            if power > 0:
                return cls.zero(vars)
            raise PoleError("(1 - 1) in a denominator")
        if power == 0:
            return cls.one(vars)
        return cls._build(vars, 1, None, None, None, {exps: power})

    # -- normal form -------------------------------------------------------

    def _absorb_content(self):
        c, lo, p = self.num.content()
        if c != 1 or any(lo):
            self.coeff = _c(self.coeff * c)
            self.mono = tuple(map(add, self.mono, lo))
            self.num = p
        c, lo, p = self.den.content()
        if c != 1 or any(lo):
            self.coeff = _c(Fraction(self.coeff) / c)
            self.mono = tuple(map(sub, self.mono, lo))
            self.den = p

    def _pull_binomial(self, attr, sign):
        p = getattr(self, attr)
        if len(p.terms) != 2:
            return
        (e1, c1), (e2, c2) = sorted(p.terms.items())
        if c1 != -c2:
            return
        # p = c2 x^e2 (1 - x^(e1-e2))
        v = tuple(map(sub, e1, e2))
        flipped, key = _canon(v)
        lead = c2
        mono = e2
        if flipped:
            lead = -lead
            mono = e1
        if sign > 0:
            self.coeff = _c(self.coeff * lead)
            self.mono = tuple(map(add, self.mono, mono))
        else:
            self.coeff = _c(Fraction(self.coeff) / lead)
            self.mono = tuple(map(sub, self.mono, mono))
        self.factors[key] = self.factors.get(key, 0) + sign
        setattr(self, attr, LaurentPoly.one(self.vars))

    def _canonicalize_keys(self):
        fac = {}
        for v, m in self.factors.items():
            if not m:
                continue
            if not any(v):
                if m > 0:
                    self.coeff = 0
                    return
                raise PoleError("(1 - 1) in a denominator")
            flipped, key = _canon(v)
            if flipped:
                # (1 - x^v)^m = (-x^v)^m (1 - x^-v)^m
                if m % 2:
                    self.coeff = -self.coeff
                self.mono = tuple(a + m * b for a, b in zip(self.mono, v))
            fac[key] = fac.get(key, 0) + m
        self.factors = fac

    def _normalize(self, cancel=True):
        self._canonicalize_keys()
        if not self.coeff:
            one = LaurentPoly.one(self.vars)
            self.mono = (0,) * len(self.vars)
            self.num, self.den, self.factors = one, one, {}
            return
        fac = self.factors
        for k in [k for k, m in fac.items() if not m]:
            del fac[k]
        self._absorb_content()
        self._pull_binomial("num", 1)
        self._pull_binomial("den", -1)
        for k in [k for k, m in fac.items() if not m]:
            del fac[k]
        if not cancel:
            return
        # residual numerator against denominator binomials
        for v in [k for k, m in fac.items() if m < 0]:
            while fac[v] < 0 and not self.num.is_constant():
                q = _try_div_binomial(self.num, v)
                if q is None:
                    break
                self.num = q
                fac[v] += 1
                self._absorb_content()
        # parallel binomials: (1 - x^(a w)) / (1 - x^w) = 1 + x^w + ...
        neg = [k for k, m in fac.items() if m < 0]
        pos = [k for k, m in fac.items() if m > 0]
        for v in neg:
            for w in pos:
                if fac.get(v, 0) >= 0 or fac.get(w, 0) <= 0:
                    continue
                a = _multiple(w, v)
                if a is not None:
                    while fac[v] < 0 and fac[w] > 0:
                        self.num = self.num * _geometric(self.vars, v, a)
                        fac[v] += 1
                        fac[w] -= 1
                    continue
                a = _multiple(v, w)
                if a is not None:
                    while fac[v] < 0 and fac[w] > 0:
                        q = _try_div_binomial(self.num.mul_binomial(w), v)
                        if q is None:
                            break
                        self.num = q
                        fac[v] += 1
                        fac[w] -= 1
        for k in [k for k, m in fac.items() if not m]:
            del fac[k]
        if not self.den.is_constant():
            try:
                self.num = exact_div(self.num, self.den)
                self.den = LaurentPoly.one(self.vars)
            except NotDivisible:
                pass
        self._absorb_content()

    def normalize(self):
        """Return a normalised copy (normal form is idempotent)."""
        return RatFunc._build(
            self.vars, self.coeff, self.mono, self.num, self.den, self.factors
        )

    # -- queries -----------------------------------------------------------

    def is_zero(self):
        return not self.coeff

    def is_laurent(self):
        """True when the value is a Laurent polynomial."""
        if self.is_zero():
            return True
        if self.den.is_constant() and all(m > 0 for m in self.factors.values()):
            return True
        try:
            self.to_laurent()
        except NotDivisible:
            return False
        return True

    def is_integral(self):
        """Value lies in Z[x^{+-1}] (Laurent with integer coefficients)."""
        try:
            return self.to_laurent().is_integral()
        except NotDivisible:
            return False

    def denominator_factors(self):
        return {k: -m for k, m in self.factors.items() if m < 0}

    def numerator_poly(self):
        """Expanded numerator: everything except negative factors and ``den``."""
        if self.is_zero():
            return LaurentPoly.zero(self.vars)
        p = self.num
        for v, m in sorted(self.factors.items()):
            if m > 0:
                p = p.mul_binomial(v, m)
        return p.shift(self.mono).scale(self.coeff)

    def denominator_poly(self):
        p = self.den
        for v, m in sorted(self.factors.items()):
            if m < 0:
                p = p.mul_binomial(v, -m)
        return p

    def to_laurent(self) -> LaurentPoly:
        """Expand to a Laurent polynomial, or raise :class:`NotDivisible`."""
        if self.is_zero():
            return LaurentPoly.zero(self.vars)
        p = self.numerator_poly()
        for v, m in sorted(self.factors.items()):
            for _ in range(-m if m < 0 else 0):
                q = _try_div_binomial(p, v)
                if q is None:
                    raise NotDivisible("denominator binomial does not cancel")
                p = q
        if not self.den.is_constant():
            p = exact_div(p, self.den)
        return p

    def involves(self, names):
        names = set(names)
        idx = [i for i, v in enumerate(self.vars) if v in names]
        if any(self.mono[i] for i in idx):
            return True
        if self.num.involves(names) or self.den.involves(names):
            return True
        return any(k[i] for k in self.factors for i in idx)

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.vars != self.vars:
                raise ContextMismatch(f"context {self.vars} does not match {other.vars}")
            return other
        if isinstance(other, LaurentPoly):
            if other.vars != self.vars:
                raise ContextMismatch(f"context {self.vars} does not match {other.vars}")
            return RatFunc.from_poly(other)
        if isinstance(other, Monomial):
            return RatFunc.monomial(self.vars, other)
        if _is_scalar(other):
            return RatFunc.const(self.vars, other)
        return None

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RatFunc.zero(self.vars)
        fac = dict(self.factors)
        for k, m in other.factors.items():
            fac[k] = fac.get(k, 0) + m
        num = self.num if other.num.is_constant() else (
            other.num if self.num.is_constant() else self.num * other.num
        )
        den = self.den if other.den.is_constant() else (
            other.den if self.den.is_constant() else self.den * other.den
        )
        return RatFunc._build(
            self.vars,
            self.coeff * other.coeff,
            tuple(map(add, self.mono, other.mono)),
            num,
            den,
            fac,
        )

    __rmul__ = __mul__

    def inv(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFunc._build(
            self.vars,
            Fraction(1) / Fraction(self.coeff),
            _neg(self.mono),
            self.den,
            self.num,
            {k: -m for k, m in self.factors.items()},
        )

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inv()

    def __neg__(self):
        r = RatFunc(self.vars, _c(-self.coeff), self.mono, self.num, self.den, dict(self.factors))
        return r

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inv() ** (-k)
        if self.is_zero():
            return RatFunc.zero(self.vars) if k else RatFunc.one(self.vars)
        return RatFunc._build(
            self.vars,
            Fraction(self.coeff) ** k,
            _scale(self.mono, k),
            self.num ** k,
            self.den ** k,
            {v: m * k for v, m in self.factors.items()},
        )

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RatFunc.sum([self, other])

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RatFunc.sum([self, -other])

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RatFunc.sum([other, -self])

    @staticmethod
    def sum(items):
        """Sum over a common factored denominator."""
        items = list(items)
        if not items:
            raise ValueError("empty sum needs a context; use RatFunc.zero")
        vars = items[0].vars
        items = [x for x in items if not x.is_zero()]
        if not items:
            return RatFunc.zero(vars)
        if len(items) == 1:
            return items[0]
        vars = items[0].vars
        for x in items:
            if x.vars != vars:
                raise ContextMismatch("sum over different contexts")
        keys = set(chain.from_iterable(x.factors for x in items))
        dmax = {}
        pmin = {}
        for k in keys:
            ms = [x.factors.get(k, 0) for x in items]
            dmax[k] = max(max(-m, 0) for m in ms)
            pmin[k] = min(max(m, 0) for m in ms)
        dens = []
        for x in items:
            if not x.den.is_constant() and all(x.den != d for d in dens):
                dens.append(x.den)
        total = LaurentPoly.zero(vars)
        for x in items:
            p = x.num.shift(x.mono).scale(x.coeff)
            for k in sorted(keys):
                m = x.factors.get(k, 0)
                extra = max(m, 0) - pmin[k] + dmax[k] - max(-m, 0)
                if extra:
                    p = p.mul_binomial(k, extra)
            for d in dens:
                if x.den != d:
                    p = p * d
            total = total + p
        if total.is_zero():
            return RatFunc.zero(vars)
        den_total = LaurentPoly.one(vars)
        for d in dens:
            den_total = den_total * d
        fac = {k: pmin[k] - dmax[k] for k in keys}
        return RatFunc._build(vars, 1, None, total, den_total, fac)

    # -- equality -------------------------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if (
            self.factors == other.factors
            and self.den == other.den
            and self.mono == other.mono
            and self.coeff == other.coeff
            and self.num == other.num
        ):
            return True
        return (self - other).is_zero()

    __hash__ = None

    # -- maps -------------------------------------------------------------------

    def permute(self, src):
        """Reorder exponent positions (see :meth:`LaurentPoly.permute`)."""
        if self.is_zero():
            return self
        return RatFunc._build(
            self.vars,
            self.coeff,
            tuple(self.mono[j] for j in src),
            self.num.permute(src),
            self.den.permute(src),
            {tuple(v[j] for j in src): m for v, m in self.factors.items()},
        )

    def rename(self, mapping):
        pos = {v: i for i, v in enumerate(self.vars)}
        src = list(range(len(self.vars)))
        for a, b in mapping.items():
            src[pos[b]] = pos[a]
        return self.permute(src)

    def extend(self, vars):
        vars = tuple(vars)
        if vars == self.vars:
            return self
        idx = [self.vars.index(v) if v in self.vars else None for v in vars]
        dropped = set(self.vars) - set(vars)
        if dropped and self.involves(dropped):
            raise ContextMismatch(f"cannot drop variables {sorted(dropped)}")

        def emb(e):
            return tuple(0 if i is None else e[i] for i in idx)

        return RatFunc._build(
            vars,
            self.coeff,
            emb(self.mono),
            self.num.extend(vars),
            self.den.extend(vars),
            {emb(k): m for k, m in self.factors.items()},
            cancel=False,
        )

    def substitute(self, bindings, vars=None):
        """Image under ``var -> Monomial | LaurentPoly monomial | rational``.

        Raises :class:`PoleError` if a denominator factor vanishes.
        """
        vars = tuple(vars) if vars is not None else self.vars
        images = []
        for v in self.vars:
            b = bindings.get(v, None)
            if b is None:
                if v not in vars:
                    images.append((Fraction(1), None, v))
                else:
                    images.append((Fraction(1), Monomial.from_dict(vars, {v: 1}).exps, v))
                continue
            if isinstance(b, Monomial):
                if b.vars != vars:
                    b = Monomial.from_dict(vars, b.as_dict())
                images.append((Fraction(1), b.exps, v))
            elif isinstance(b, LaurentPoly):
                if not b.is_monomial():
                    raise ValueError("only monomial or rational bindings are supported")
                b = b.extend(vars) if b.vars != vars else b
                (e, c), = b.terms.items()
                images.append((Fraction(c), e, v))
            elif _is_scalar(b):
                images.append((Fraction(b), (0,) * len(vars), v))
            else:
                raise TypeError(f"unsupported binding for {v}: {b!r}")

        def image(e):
            c = Fraction(1)
            out = [0] * len(vars)
            for (ci, ei, name), a in zip(images, e):
                if not a:
                    continue
                if ei is None:
                    raise ContextMismatch(f"{name} has no image in the target context")
                if ci == 0 and a < 0:
                    raise PoleError(f"{name} -> 0 under a negative power")
                if ci != 1:
                    c *= ci ** a
                for i, x in enumerate(ei):
                    if x:
                        out[i] += a * x
            return c, tuple(out)

        def poly_image(p):
            terms = {}
            for e, c in p.terms.items():
                ce, oe = image(e)
                terms[oe] = _c(terms.get(oe, 0) + c * ce)
            return LaurentPoly(vars, terms)

        if self.is_zero():
            return RatFunc.zero(vars)
        cm, em = image(self.mono)
        result = RatFunc._build(vars, self.coeff * cm, em)
        num = poly_image(self.num)
        den = poly_image(self.den)
        if den.is_zero():
            raise PoleError("denominator vanishes under substitution")
        parts = [RatFunc.from_poly(num), RatFunc.from_poly(den).inv()]
        for v, m in self.factors.items():
            c, e = image(v)
            if c == 1 and not any(e):
                if m < 0:
                    raise PoleError("a denominator factor (1 - m) became (1 - 1)")
                return RatFunc.zero(vars)
            if c == 1:
                parts.append(RatFunc.binomial(vars, e, m))
            else:
                base = LaurentPoly.one(vars) - LaurentPoly.monomial(vars, e, c)
                if base.is_zero():
                    if m < 0:
                        raise PoleError("a denominator factor vanished under substitution")
                    return RatFunc.zero(vars)
                rb = RatFunc.from_poly(base)
                parts.append(rb ** m)
        for p in parts:
            result = result * p
        return result

    def evaluate(self, point):
        """Exact value at a rational point; raises :class:`PoleError` at poles."""
        if self.is_zero():
            return Fraction(0)
        vals = {v: Fraction(point[v]) for v in self.vars if v in point}

        def mono_val(e):
            r = Fraction(1)
            for v, a in zip(self.vars, e):
                if a:
                    x = vals[v]
                    if x == 0 and a < 0:
                        raise PoleError("negative power of zero")
                    r *= x ** a
            return r

        val = Fraction(self.coeff) * mono_val(self.mono) * self.num.evaluate(vals)
        d = self.den.evaluate(vals)
        if d == 0:
            raise PoleError("denominator vanishes at this point")
        val /= d
        for v, m in self.factors.items():
            b = 1 - mono_val(v)
            if b == 0:
                if m < 0:
                    raise PoleError("a denominator factor vanishes at this point")
                return Fraction(0)
            val *= b ** m
        return val

    # -- output -------------------------------------------------------------

    def _factor_strings(self, latex=False):
        pos, neg = [], []
        for v in sorted(self.factors):
            m = self.factors[v]
            body = "1 - " + _fmt_mono(self.vars, v, latex=latex)
            s = f"({body})" if abs(m) == 1 else (
                f"({body})^{{{abs(m)}}}" if latex else f"({body})^{abs(m)}"
            )
            (pos if m > 0 else neg).append(s)
        return pos, neg

    def _display_num(self):
        """``(coeff, num)`` rescaled so ``num`` has coprime integer coefficients."""
        c, num = Fraction(self.coeff), self.num
        if num.is_constant():
            return c, num
        vals = [Fraction(x) for x in num.terms.values()]
        den = 1
        for x in vals:
            den = den * x.denominator // gcd(den, x.denominator)
        g = 0
        for x in vals:
            g = gcd(g, int(x * den))
        k = Fraction(den, g)
        if k == 1:
            return c, num
        return c / k, num.scale(k)

    def __str__(self):
        if self.is_zero():
            return "0"
        pos, neg = self._factor_strings()
        lead = []
        c, num = self._display_num()
        m = _fmt_mono(self.vars, self.mono)
        numpart = []
        if not num.is_constant():
            numpart.append(f"({num})")
        body = pos + numpart
        sign = "-" if c < 0 else ""
        a = abs(c)
        if a != 1 or (not m and not body):
            lead.append(_fmt_coeff(a))
        if m:
            lead.append(m)
        s = sign + "*".join(lead + body)
        dens = list(neg)
        if not self.den.is_constant():
            dens.append(f"({self.den})")
        if dens:
            s += " / " + ("*".join(dens) if len(dens) == 1 else "(" + "*".join(dens) + ")")
        return s

    def __repr__(self):
        return f"RatFunc({self})"

    def latex(self):
        if self.is_zero():
            return "0"
        pos, neg = self._factor_strings(latex=True)
        c, num = self._display_num()
        numer = []
        m = _fmt_mono(self.vars, self.mono, latex=True)
        a = abs(c)
        if a.numerator != 1:
            numer.append(str(a.numerator))
        if m:
            numer.append(m)
        numer += pos
        if not num.is_constant():
            numer.append(f"\\left({num.latex()}\\right)")
        dens = []
        if a.denominator != 1:
            dens.append(str(a.denominator))
        dens += neg
        if not self.den.is_constant():
            dens.append(f"\\left({self.den.latex()}\\right)")
        top = " ".join(numer) or "1"
        sign = "-" if c < 0 else ""
        if dens:
            return f"{sign}\\frac{{{top}}}{{{' '.join(dens)}}}"
        return sign + top

    def to_json(self):
        obj = {
            "vars": list(self.vars),
            "terms": _json_terms(self.vars, self.numerator_poly().terms),
            "denFactors": [
                {"exps": {v: a for v, a in zip(self.vars, k) if a}, "mult": -m}
                for k, m in sorted(self.factors.items())
                if m < 0
            ],
        }
        if not self.den.is_constant():
            obj["denTerms"] = _json_terms(self.vars, self.den.terms)
        return obj

    @classmethod
    def from_json(cls, obj):
        vars = tuple(obj["vars"])
        num = _terms_from_json(vars, obj["terms"])
        rf = RatFunc.from_poly(num)
        for f in obj.get("denFactors", []):
            e = Monomial.from_dict(vars, {k: int(v) for k, v in f["exps"].items()}).exps
            rf = rf * RatFunc.binomial(vars, e, -int(f["mult"]))
        if obj.get("denTerms"):
            rf = rf / RatFunc.from_poly(_terms_from_json(vars, obj["denTerms"]))
        return rf


def ratfunc_arith(a: RatFunc, b: RatFunc | None, op: str) -> RatFunc:
    """Dispatch ``add``, ``mul``, ``neg`` or ``inv``."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inv()
    raise ValueError(f"unknown op {op!r}")


def substitute(f, bindings, vars=None):
    if isinstance(f, LaurentPoly):
        f = RatFunc.from_poly(f)
    return f.substitute(bindings, vars)
