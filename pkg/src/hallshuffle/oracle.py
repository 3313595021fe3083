"""Pointwise evaluation of the generator formulas at exact rational points.

This module deliberately shares no code with :mod:`hallshuffle.shuffle` or
:mod:`hallshuffle.arith`: every formula is evaluated as written, summed over
all permutations, with plain ``Fraction`` arithmetic and no cancellation.
It is the independent side of the dual-route checks.
"""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, permutations
from math import ceil, factorial, floor, prod


def zeta(x, q1, q2):
    return (1 - x * q1) * (1 - x * q2) * (1 - q1 * q2 / x) / (1 - x)


def random_point(N, rng=None, *, lo=2, hi=60):
    """Random rational point with distinct, generic-looking coordinates."""
    rng = rng or random.Random()
    seen = set()

    def pick():
        while True:
            x = Fraction(rng.randint(lo, hi), rng.randint(lo, hi))
            if x != 1 and x not in seen:
                seen.add(x)
                return x

    q1, q2 = pick(), pick()
    return q1, q2, tuple(pick() for _ in range(N))


def _kernel(z, q1, q2):
    N = len(z)
    return prod(zeta(z[i] / z[j], q1, q2) for i in range(N) for j in range(i + 1, N))


def sym(f, z):
    """``sum_sigma f(z_sigma(1), ..., z_sigma(N))``."""
    return sum(f(tuple(z[i] for i in s)) for s in permutations(range(len(z))))


def _fl(m, i, n):
    return floor(Fraction(m * i, n))


def _cl(m, i, n):
    return ceil(Fraction(m * i, n))


def _zmono(z, exps):
    return prod(x**e for x, e in zip(z, exps))


def H(m, n, q1, q2, z, prime=False):
    r = _cl if prime else _fl
    exps = [r(m, i, n) - r(m, i - 1, n) for i in range(1, n + 1)]

    def f(w):
        if prime:
            den = prod(1 - w[i - 1] * q1 / w[i] for i in range(1, n))
        else:
            den = prod(1 - w[i] * q1 * q2 / w[i - 1] for i in range(1, n))
        return _zmono(w, exps) / den * _kernel(w, q1, q2)

    pre = (1 - q1 * q2) ** (n - 1) if prime else (1 - q1) ** (n - 1)
    return pre * (1 - q2) ** n * sym(f, z)


def R(dvec, q1, q2, z):
    n = len(dvec)

    def f(w):
        den = prod(1 - w[i] * q1 * q2 / w[i - 1] for i in range(1, n))
        return _zmono(w, dvec) / den * _kernel(w, q1, q2)

    return (1 - q1) ** (n - 1) * (1 - q2) ** n * sym(f, z)


def Sbar(m, n, d, q1, q2, z, presentation="A"):
    N = n * d
    exps = [_fl(m, i, n) - _fl(m, i - 1, n) for i in range(1, N + 1)]
    if presentation == "A":
        a = q1
        c = q1 * q2

        def f(w):
            num = prod(q1**i - w[n * i] * c / w[n * i - 1] for i in range(1, d))
            den = prod(1 - q1**i for i in range(1, d + 1))
            den *= prod(1 - w[i] * c / w[i - 1] for i in range(1, N))
            return _zmono(w, exps) * num / den * _kernel(w, q1, q2)

    else:
        a = 1 / (q1 * q2)

        def f(w):
            num = prod(a**i - w[n * i] / (w[n * i - 1] * q1) for i in range(1, d))
            den = prod(1 - a**i for i in range(1, d + 1))
            den *= prod(1 - w[i] / (w[i - 1] * q1) for i in range(1, N))
            return _zmono(w, exps) * num / den * _kernel(w, q1, q2)

    return (1 - a) ** N * (1 - q2) ** N * sym(f, z)


def Pbar(m, n, d, q1, q2, z):
    N = n * d
    exps = [_fl(m, i, n) - _fl(m, i - 1, n) for i in range(1, N + 1)]

    def f(w):
        s = sum(
            prod(w[n * t] / w[n * t - 1] for t in range(d - i, d)) * (q1 * q2) ** i
            for i in range(d)
        )
        den = prod(1 - w[i] * q1 * q2 / w[i - 1] for i in range(1, N))
        return _zmono(w, exps) * s / den * _kernel(w, q1, q2)

    return (1 - q1) ** N * (1 - q2) ** N / (1 - q1**d) * sym(f, z)


def ribbon(m, n, eps, q1, q2, z):
    d = len(eps) + 1
    N = n * d
    exps = [_fl(m, i, n) - _fl(m, i - 1, n) for i in range(1, N + 1)]

    def f(w):
        num = prod(
            -w[n * i] * q1 * q2 / w[n * i - 1]
            for i, s in enumerate(eps, start=1)
            if s == "-"
        )
        den = prod(1 - w[i] * q1 * q2 / w[i - 1] for i in range(1, N))
        return _zmono(w, exps) * num / den * _kernel(w, q1, q2)

    return (1 - q1) ** N * (1 - q2) ** N * sym(f, z)


def mat_class(n, q1, q2, z):
    return prod(1 - z[i] * q2 / z[j] for i in range(n) for j in range(n))


def flag(Rfun, z):
    """``Sym[R(z) / prod_{i<j} (1 - z_i / z_j)]`` for a callable ``R``."""
    n = len(z)

    def f(w):
        return Rfun(w) / prod(1 - w[i] / w[j] for i in range(n) for j in range(i + 1, n))

    return sym(f, z)


def eccentric(m, n, q1, q2, z):
    exps = [_cl(m, i, n) - _cl(m, i - 1, n) for i in range(1, n + 1)]

    def Rf(L):
        out = _zmono(L, exps) * (1 - q1 * q2) ** (n - 1) * (1 - q2) ** n
        for i in range(n):
            for j in range(i + 1, n):
                out *= (1 - L[j] * q1 * q2 / L[i]) * (1 - L[i] * q2 / L[j])
                if j >= i + 2:
                    out *= 1 - L[i] * q1 / L[j]
        return out

    return flag(Rf, z)


def shuffle(fa, na, fb, nb, q1, q2, z):
    """Star product of two callables ``f(q1, q2, zs)`` of degrees ``na, nb``.

    Evaluated as the full sum over ``S_N`` divided by ``na! nb!``, not as a
    coset sum, so it does not share the shortcut used symbolically.
    """
    N = na + nb

    def f(w):
        a = fa(q1, q2, w[:na])
        b = fb(q1, q2, w[na:])
        k = prod(zeta(w[i] / w[j], q1, q2) for i in range(na) for j in range(na, N))
        return a * b * k

    return sym(f, z) / (factorial(na) * factorial(nb))


def shuffle_cosets(fa, na, fb, nb, q1, q2, z):
    """Same product summed over shuffles; for desk-scale speed at large ``N``."""
    N = na + nb
    total = Fraction(0)
    for S in combinations(range(N), na):
        rest = [i for i in range(N) if i not in S]
        wa = tuple(z[i] for i in S)
        wb = tuple(z[i] for i in rest)
        k = prod(zeta(x / y, q1, q2) for x in wa for y in wb)
        total += fa(q1, q2, wa) * fb(q1, q2, wb) * k
    return total


def as_callable(element):
    """Turn a symbolic shuffle element into ``f(q1, q2, zs)``."""

    def f(q1, q2, zs):
        point = {"q1": q1, "q2": q2}
        point.update({f"z{i + 1}": x for i, x in enumerate(zs)})
        return element.evaluate(point)

    return f


def point_dict(q1, q2, z):
    out = {"q1": q1, "q2": q2}
    out.update({f"z{i + 1}": x for i, x in enumerate(z)})
    return out
