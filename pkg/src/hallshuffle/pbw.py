"""Expansion of shuffle elements in slope-ordered products of generators.

A PBW index is a tuple of pairs ``(m_i, n_i)`` sorted by slope ``m_i/n_i``
(ties broken by ``n_i``).  The pair ``(m, n)`` stands for the generator
``Sbar`` with ``g = gcd(m, n)`` copies of slope ``(m/g)/(n/g)``.  Since the
index set at fixed size is infinite, every computation takes a slope window.
"""
from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from math import ceil, floor, gcd

from .arith import LaurentPoly, RatFunc
from .errors import InvariantViolation, NotInSpan
from .linalg import bareiss_solve, rref
from .shuffle import ShuffleElement, gen_Sbar

__all__ = [
    "QVARS",
    "enumerate_pbw",
    "pbw_product",
    "coordinate_matrix",
    "column_rank",
    "express",
    "reconstruct",
    "ordered_expansion",
    "expansion_to_json",
]

QVARS = ("q1", "q2")


def _slope_key(part):
    m, n = part
    return (Fraction(m, n), n)


def _window(window):
    lo, hi = (Fraction(x) for x in window)
    if lo > hi:
        raise ValueError(f"empty slope window [{lo}, {hi}]")
    return lo, hi


def enumerate_pbw(n: int, m: int, window=None) -> list:
    """All slope-ordered indices with ``sum n_i = n`` and ``sum m_i = m``.

    ``window = (s_min, s_max)`` bounds every slope.  Without a window the
    set is infinite unless ``n == 1``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if window is None:
        if n == 1:
            return [((m, 1),)]
        raise ValueError("a slope window is required when n >= 2")
    lo, hi = _window(window)
    parts = [
        (mi, ni)
        for ni in range(1, n + 1)
        for mi in range(ceil(lo * ni), floor(hi * ni) + 1)
    ]
    parts.sort(key=_slope_key)
    out = []

    def rec(start, rest_n, rest_m, acc):
        if rest_n == 0:
            if rest_m == 0:
                out.append(tuple(acc))
            return
        # every remaining part has slope in [slope(parts[start]), hi]
        for k in range(start, len(parts)):
            mi, ni = parts[k]
            if ni > rest_n:
                continue
            s = Fraction(mi, ni)
            left_n = rest_n - ni
            left_m = rest_m - mi
            if left_m < s * left_n or left_m > hi * left_n:
                continue
            acc.append(parts[k])
            rec(k, left_n, left_m, acc)
            acc.pop()

    rec(0, n, m, [])
    return out


def _generator(part):
    m, n = part
    g = gcd(m, n)
    return gen_Sbar((m // g, n // g, g))


@lru_cache(maxsize=None)
def pbw_product(index) -> ShuffleElement:
    """The star product of the generators in ``index``, left to right."""
    index = tuple(tuple(p) for p in index)
    if not index:
        return ShuffleElement.unit()
    if len(index) == 1:
        return _generator(index[0])
    return pbw_product(index[:-1]) * _generator(index[-1])


def _coords(value: RatFunc):
    """``(den, {z-exponents: LaurentPoly in q})`` with value = coords / den."""
    num = value.numerator_poly()
    den = value.denominator_poly()
    if den.involves(value.vars[2:]):
        raise ValueError("z in the denominator")
    den_q = LaurentPoly(QVARS, {e[:2]: c for e, c in den.terms.items()})
    rows = {}
    for e, c in num.terms.items():
        rows.setdefault(e[2:], {})[e[:2]] = c
    return den_q, {z: LaurentPoly(QVARS, t) for z, t in rows.items()}


def coordinate_matrix(indices):
    """Rows indexed by z-monomials, one column per index."""
    cols = []
    support = set()
    for I in indices:
        den, c = _coords(pbw_product(I).value)
        if not den.is_constant():  # pragma: no cover - generators are integral
            raise InvariantViolation(f"product {I} is not integral")
        k = Fraction(den.constant_value())
        c = {z: p.scale(1 / k) if k != 1 else p for z, p in c.items()}
        cols.append(c)
        support |= set(c)
    rows = sorted(support)
    zero = LaurentPoly.zero(QVARS)
    return rows, [[col.get(z, zero) for col in cols] for z in rows]


def _random_q(rng):
    return {
        "q1": Fraction(rng.randint(2, 97), rng.randint(2, 97)),
        "q2": Fraction(rng.randint(2, 97), rng.randint(2, 97)),
    }


def _specialize(M, point):
    return [[x.evaluate(point) for x in row] for row in M]


def _pivot_rows(M, rng, tries=4):
    """Rank and independent row positions, from a random specialization.

    A nonzero minor at one rational point is nonzero as a polynomial, so a
    full rank found here is certified; a deficient rank is retried.
    """
    if not M:
        return 0, []
    k = len(M[0])
    best = (0, [])
    for _ in range(tries):
        S = _specialize(M, _random_q(rng))
        # pivot columns of the transpose are independent rows
        T = [list(col) for col in zip(*S)]
        _, piv = rref(T)
        if len(piv) > best[0]:
            best = (len(piv), piv)
        if best[0] == k:
            break
    return best


def column_rank(indices, *, seed=0):
    """Rank of the coordinate matrix (exact when it equals ``len(indices)``)."""
    _, M = coordinate_matrix(indices)
    return _pivot_rows(M, random.Random(seed))[0]


def reconstruct(coeffs: dict, n: int) -> ShuffleElement:
    total = ShuffleElement.zero(n)
    for I, c in coeffs.items():
        total = total + pbw_product(I).scale(c)
    return total


def express(target: ShuffleElement, window, *, assert_integral=False, seed=0) -> dict:
    """Coefficients ``{index: RatFunc in q1, q2}`` expanding ``target``.

    Raises :class:`NotInSpan` when the windowed products do not reach the
    target.  With ``assert_integral`` the coefficients must be Laurent
    polynomials with integer coefficients.
    """
    m = target.z_degree()
    if m is None:
        if target.is_zero():
            return {}
        raise ValueError("target must be homogeneous in the z variables")
    indices = enumerate_pbw(target.n, m, window)
    if not indices:
        raise NotInSpan(f"no PBW products in window {list(window)}")
    rows, M = coordinate_matrix(indices)
    den, b = _coords(target.value)
    if set(b) - set(rows):
        raise NotInSpan("target has monomials outside the span of the products")
    k = len(indices)
    rng = random.Random(seed)
    r, piv = _pivot_rows(M, rng)
    if r < k:
        raise InvariantViolation(
            f"products in window {list(window)} are dependent (rank {r} < {k})"
        )
    zero = LaurentPoly.zero(QVARS)
    A = [M[i] for i in piv]
    rhs = [b.get(rows[i], zero) for i in piv]
    det, y = bareiss_solve(A, rhs)
    dd = RatFunc.from_poly(det) * RatFunc.from_poly(den)
    coeffs = {}
    for I, yi in zip(indices, y):
        if not yi.is_zero():
            coeffs[I] = RatFunc.from_poly(yi) / dd
    if reconstruct(coeffs, target.n) != target:
        raise NotInSpan(f"target is not in the span of window {list(window)}")
    if assert_integral:
        for I, c in coeffs.items():
            if not c.is_laurent() or not c.is_integral():
                raise InvariantViolation(f"non-integral coefficient {c} at {I}")
    return coeffs


def ordered_expansion(coeffs):
    return sorted(coeffs.items(), key=lambda t: [_slope_key(p) for p in t[0]])


def expansion_to_json(target, window, coeffs):
    return {
        "target": target.to_json(),
        "window": [str(Fraction(s)) for s in window],
        "coeffs": [
            {"index": [[str(m), str(n)] for m, n in I], "coeff": c.to_json()}
            for I, c in ordered_expansion(coeffs)
        ],
    }
