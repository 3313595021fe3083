"""Left ideals of Q[S_n] cut out by parabolic (anti)symmetrizers.

Permutations are tuples in one-line notation on ``0..n-1`` and multiply as
functions: ``(a * b)[i] = a[b[i]]``.  Sign sequences follow the ribbon
convention: ``eps[i-1] == '+'`` puts ``sigma_i`` in the symmetrized subgroup,
``'-'`` puts it in the antisymmetrized one.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import factorial

from .errors import SizeBoundExceeded
from .linalg import rref
from .symfunc import _norm_signs, cycle_type, frobenius_char

__all__ = [
    "GroupAlgElem",
    "compose",
    "perm_sign",
    "simple_transposition",
    "parabolic_subgroup",
    "symmetrizer",
    "antisymmetrizer",
    "ideal_basis",
    "ideal_dimension",
    "solomon_check",
    "SolomonReport",
    "ideal_character",
    "MAX_BASIS_N",
    "MAX_CHECK_N",
]

MAX_BASIS_N = 6
MAX_CHECK_N = 5


def compose(a, b):
    return tuple(a[i] for i in b)


def perm_sign(p) -> int:
    sign = 1
    seen = [False] * len(p)
    for i in range(len(p)):
        if not seen[i]:
            j, ell = i, 0
            while not seen[j]:
                seen[j] = True
                j = p[j]
                ell += 1
            if ell % 2 == 0:
                sign = -sign
    return sign


def simple_transposition(i: int, n: int):
    """``sigma_i`` swapping ``i-1`` and ``i`` for ``1 <= i <= n-1``."""
    p = list(range(n))
    p[i - 1], p[i] = p[i], p[i - 1]
    return tuple(p)


class GroupAlgElem:
    """Finite Q-linear combination of permutations of ``0..n-1``."""

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = n
        self.terms = {}
        for perm, c in (terms or {}).items():
            perm = tuple(perm)
            if len(perm) != n or sorted(perm) != list(range(n)):
                raise ValueError(f"{perm} is not a permutation of 0..{n - 1}")
            c = Fraction(c)
            if c:
                self.terms[perm] = self.terms.get(perm, 0) + c
        self.terms = {p: c for p, c in self.terms.items() if c}

    @classmethod
    def identity(cls, n):
        return cls(n, {tuple(range(n)): 1})

    @classmethod
    def of(cls, perm):
        return cls(len(perm), {tuple(perm): 1})

    def __add__(self, other):
        t = dict(self.terms)
        for p, c in other.terms.items():
            t[p] = t.get(p, 0) + c
        return GroupAlgElem(self.n, t)

    def __neg__(self):
        return GroupAlgElem(self.n, {p: -c for p, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, GroupAlgElem):
            if other.n != self.n:
                raise ValueError("different symmetric groups")
            t = {}
            for a, x in self.terms.items():
                for b, y in other.terms.items():
                    p = compose(a, b)
                    t[p] = t.get(p, 0) + x * y
            return GroupAlgElem(self.n, t)
        c = Fraction(other)
        return GroupAlgElem(self.n, {p: v * c for p, v in self.terms.items()})

    def __rmul__(self, other):
        c = Fraction(other)
        return GroupAlgElem(self.n, {p: v * c for p, v in self.terms.items()})

    def left_mul_perm(self, w):
        return GroupAlgElem(self.n, {compose(w, p): c for p, c in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, GroupAlgElem) and self.n == other.n and self.terms == other.terms

    __hash__ = None

    def vector(self, order):
        return [self.terms.get(p, Fraction(0)) for p in order]

    def __repr__(self):
        inner = " + ".join(f"{c}*{list(p)}" for p, c in sorted(self.terms.items()))
        return f"GroupAlgElem({inner or 0})"

    def to_json(self):
        return {
            "n": self.n,
            "terms": [
                {"perm": list(p), "num": str(c.numerator), "den": str(c.denominator)}
                for p, c in sorted(self.terms.items())
            ],
        }

    @classmethod
    def from_json(cls, obj):
        return cls(
            int(obj["n"]),
            {tuple(t["perm"]): Fraction(int(t["num"]), int(t["den"])) for t in obj["terms"]},
        )


def parabolic_subgroup(gens, n):
    ident = tuple(range(n))
    seen = {ident}
    todo = [ident]
    while todo:
        cur = todo.pop()
        for g in gens:
            nxt = compose(cur, g)
            if nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
    return sorted(seen)


def _subgroup(eps, sign):
    eps = _norm_signs(eps)
    n = len(eps) + 1
    gens = [simple_transposition(i, n) for i, s in enumerate(eps, start=1) if s == sign]
    return n, parabolic_subgroup(gens, n)


def symmetrizer(eps) -> GroupAlgElem:
    n, W = _subgroup(eps, "+")
    return GroupAlgElem(n, {w: 1 for w in W})


def antisymmetrizer(eps) -> GroupAlgElem:
    n, W = _subgroup(eps, "-")
    return GroupAlgElem(n, {w: perm_sign(w) for w in W})


@lru_cache(maxsize=None)
def _basis(eps):
    n = len(eps) + 1
    if n > MAX_BASIS_N:
        raise SizeBoundExceeded(f"n = {n} exceeds the row-reduction bound {MAX_BASIS_N}")
    order = list(permutations(range(n)))
    x = symmetrizer(eps) * antisymmetrizer(eps)
    rows = [x.left_mul_perm(w).vector(order) for w in order]
    R, piv = rref(rows)
    return order, R, piv


def ideal_basis(eps):
    """A basis of ``Q[S_n] e_eps e-_eps`` (reduced echelon rows)."""
    eps = _norm_signs(eps)
    order, R, _ = _basis(eps)
    n = len(eps) + 1
    return [GroupAlgElem(n, dict(zip(order, row))) for row in R]


def ideal_dimension(eps) -> int:
    return len(_basis(_norm_signs(eps))[1])


def _rank_mod_p(rows, p):
    M = [[int(x) % p for x in r] for r in rows]
    rank = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = pow(M[rank][c], -1, p)
        M[rank] = [x * inv % p for x in M[rank]]
        for i in range(len(M)):
            if i != rank and M[i][c]:
                f = M[i][c]
                M[i] = [(a - f * b) % p for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


def _integral_rows(rows):
    out = []
    for r in rows:
        den = 1
        for x in r:
            den = den * x.denominator // _gcd(den, x.denominator)
        out.append([int(x * den) for x in r])
    return out


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@dataclass
class SolomonReport:
    n: int
    dims: dict = field(default_factory=dict)
    total: int = 0
    direct: bool = False

    @property
    def ok(self):
        return self.total == factorial(self.n) and self.direct


def solomon_check(n: int, *, max_n: int = MAX_CHECK_N) -> SolomonReport:
    """Dimensions of all ideals and independence of their union.

    Independence is certified by full rank modulo a large prime, which
    implies full rank over Q.
    """
    if n > max_n:
        raise SizeBoundExceeded(f"n = {n} exceeds the bound {max_n}")
    report = SolomonReport(n)
    rows = []
    for eps in product("+-", repeat=n - 1):
        _, R, _ = _basis(eps)
        report.dims["".join(eps)] = len(R)
        rows += R
    report.total = sum(report.dims.values())
    if report.total == factorial(n):
        p = 2**61 - 1
        report.direct = _rank_mod_p(_integral_rows(rows), p) == factorial(n)
    return report


def ideal_character(eps, *, max_n: int = MAX_CHECK_N):
    """Frobenius characteristic of the left regular action on the ideal."""
    eps = _norm_signs(eps)
    n = len(eps) + 1
    if n > max_n:
        raise SizeBoundExceeded(f"n = {n} exceeds the bound {max_n}")
    order, R, piv = _basis(eps)
    index = {p: i for i, p in enumerate(order)}
    reps = {}
    for w in order:
        reps.setdefault(cycle_type(w), w)
    chi = {}
    for mu, w in reps.items():
        tr = Fraction(0)
        for row, pc in zip(R, piv):
            # coordinate of w.b_k along b_k is its entry at b_k's pivot
            target = order[pc]
            # (w.b)[target] = b[w^-1 target]
            winv = [0] * n
            for i, x in enumerate(w):
                winv[x] = i
            src = compose(tuple(winv), target)
            tr += row[index[src]]
        chi[mu] = tr
    return frobenius_char(chi, n)


def random_group_elem(n, rng=None, terms=4):
    rng = rng or random.Random()
    perms = list(permutations(range(n)))
    return GroupAlgElem(
        n, {rng.choice(perms): Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(terms)}
    )
