"""Shuffle algebra elements, the star product and the generator formulas.

An element of degree ``n`` is stored as a :class:`RatFunc` over the context
``("q1", "q2", "z1", ..., "zn")`` whose denominator is free of the ``z``
variables.  ``Sym`` is the plain sum over all permutations of the ``z``
variables.

Symmetrization never touches a multivariate gcd.  The integrand is split as
``scalar(q) * P(q, z) / D(z)`` where ``D`` is a product of binomials; ``D``
is completed to its orbit under permutations of the ``z`` variables so that
``sigma(D) = u_sigma * D`` for a unit ``u_sigma``.  The sum
``sum_sigma sigma(P) / u_sigma`` is then divided by ``D`` one binomial at a
time, which is exact when the formula is correct.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from math import gcd
from numbers import Rational

from .arith import LaurentPoly, Monomial, RatFunc, _canon, _div_binomial
from .errors import CoprimalityError, ContextMismatch, InvariantViolation, PoleError

__all__ = [
    "ShuffleElement",
    "shuffle_vars",
    "flag_vars",
    "zeta",
    "symmetrize",
    "shuffle_mul",
    "gen_H",
    "gen_Hprime",
    "gen_Sbar",
    "gen_Pbar",
    "gen_R",
    "gen_ribbon",
    "mat_substack_class",
    "flag_pushforward",
    "eccentric_pushforward",
    "floor_exponents",
    "ceil_exponents",
]

Q_VARS = ("q1", "q2")


@lru_cache(maxsize=None)
def shuffle_vars(n: int) -> tuple:
    return Q_VARS + tuple(f"z{i}" for i in range(1, n + 1))


@lru_cache(maxsize=None)
def flag_vars(n: int) -> tuple:
    return Q_VARS + tuple(f"L{i}" for i in range(1, n + 1))


def _vec(N, q1=0, q2=0, z=()):
    """Exponent vector over ``shuffle_vars(N)``; ``z`` holds (index, exp) pairs."""
    v = [q1, q2] + [0] * N
    for i, a in z:
        v[1 + i] += a
    return tuple(v)


def _is_scalar(x):
    return isinstance(x, Rational) and not isinstance(x, bool)


def _check_coprime(m, n):
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if gcd(m, n) != 1:
        raise CoprimalityError(m, n)


def floor_exponents(m, n, N=None):
    """``floor(m i / n) - floor(m (i-1) / n)`` for ``i = 1..N``."""
    N = n if N is None else N
    return [(m * i) // n - (m * (i - 1)) // n for i in range(1, N + 1)]


def ceil_exponents(m, n, N=None):
    N = n if N is None else N
    return [-((-m * i) // n) + ((-m * (i - 1)) // n) for i in range(1, N + 1)]


# ---------------------------------------------------------------------------
# elements


class ShuffleElement:
    """A symmetric Laurent polynomial in ``z1..zn`` over ``Q(q1, q2)``."""

    __slots__ = ("n", "value")

    def __init__(self, n: int, value):
        self.n = n
        vars = shuffle_vars(n)
        if _is_scalar(value):
            value = RatFunc.const(vars, value)
        elif isinstance(value, LaurentPoly):
            value = RatFunc.from_poly(value)
        if not isinstance(value, RatFunc):
            raise TypeError(f"cannot build a shuffle element from {type(value).__name__}")
        if value.vars != vars:
            value = _rename_into(value, vars)
        zs = vars[2:]
        if value.den.involves(zs) or any(
            m < 0 and any(k[2:]) for k, m in value.factors.items()
        ):
            raise ValueError("shuffle elements must not have z in the denominator")
        self.value = value

    @classmethod
    def unit(cls):
        return cls(0, 1)

    @classmethod
    def zero(cls, n):
        return cls(n, 0)

    @property
    def vars(self):
        return self.value.vars

    def is_zero(self):
        return self.value.is_zero()

    def _check(self, other):
        if not isinstance(other, ShuffleElement):
            return None
        if other.n != self.n:
            raise ContextMismatch(f"degree {self.n} and degree {other.n} elements")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return ShuffleElement(self.n, self.value + other.value)

    def __sub__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return ShuffleElement(self.n, self.value - other.value)

    def __neg__(self):
        return ShuffleElement(self.n, -self.value)

    def scale(self, c):
        """Multiply by a rational number or a rational function of ``q1, q2``."""
        return ShuffleElement(self.n, self.value * _scalar_in(c, self.vars))

    def __mul__(self, other):
        if isinstance(other, ShuffleElement):
            return shuffle_mul(self, other)
        if _is_scalar(other) or isinstance(other, (RatFunc, LaurentPoly)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if _is_scalar(other) or isinstance(other, (RatFunc, LaurentPoly)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if _is_scalar(other):
            return self.scale(Fraction(1) / Fraction(other))
        if isinstance(other, (RatFunc, LaurentPoly)):
            return self.scale(RatFunc.one(other.vars) / other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, ShuffleElement):
            return self.n == other.n and self.value == other.value
        if _is_scalar(other):
            return self.value == other
        return NotImplemented

    __hash__ = None

    def poly(self) -> LaurentPoly:
        """The value as a Laurent polynomial in ``q`` and ``z``."""
        return self.value.to_laurent()

    def is_integral(self):
        return self.value.is_integral()

    def is_symmetric(self):
        """Invariant under every adjacent transposition of the z variables."""
        base = self.value
        size = len(self.vars)
        for i in range(2, size - 1):
            src = list(range(size))
            src[i], src[i + 1] = src[i + 1], src[i]
            if base.permute(src) != base:
                return False
        return True

    def z_degree(self):
        """Total z-degree if homogeneous, else ``None``."""
        degs = {sum(e[2:]) for e in self.poly_terms()}
        return degs.pop() if len(degs) == 1 else None

    def poly_terms(self):
        return self.value.numerator_poly().terms

    def evaluate(self, point):
        return self.value.evaluate(point)

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return f"ShuffleElement(n={self.n}, {self.value})"

    def latex(self):
        return self.value.latex()

    def to_json(self):
        return {"n": self.n, "poly": self.value.to_json()}

    @classmethod
    def from_json(cls, obj):
        rf = RatFunc.from_json(obj["poly"])
        return cls(int(obj["n"]), rf)


def _scalar_in(c, vars):
    if _is_scalar(c):
        return c
    if isinstance(c, LaurentPoly):
        c = RatFunc.from_poly(c)
    if not isinstance(c, RatFunc):
        raise TypeError(f"unsupported scalar {c!r}")
    if c.vars != vars:
        c = _rename_into(c, vars)
    if c.involves(vars[2:]):
        raise ValueError("scalars must not involve the z variables")
    return c


def _remap(e, idx):
    return tuple(0 if i is None else e[i] for i in idx)


def _transport(rf, target, idx, *, cancel=False):
    """Move ``rf`` to context ``target``; new position k takes old ``idx[k]``."""
    return RatFunc._build(
        target,
        rf.coeff,
        _remap(rf.mono, idx),
        LaurentPoly(target, {_remap(e, idx): c for e, c in rf.num.terms.items()}, _trusted=True),
        LaurentPoly(target, {_remap(e, idx): c for e, c in rf.den.terms.items()}, _trusted=True),
        {_remap(k, idx): m for k, m in rf.factors.items()},
        cancel=cancel,
    )


def _rename_into(rf, target, rename=None):
    """Re-express ``rf`` over ``target`` matching names (after ``rename``)."""
    rename = rename or {}
    names = [rename.get(v, v) for v in rf.vars]
    pos = {v: i for i, v in enumerate(names)}
    extra = set(names) - set(target)
    if extra and rf.involves([v for v, w in zip(rf.vars, names) if w in extra]):
        raise ContextMismatch(f"variables {sorted(extra)} are not in {target}")
    idx = [pos.get(v) for v in target]
    return _transport(rf, target, idx)


# ---------------------------------------------------------------------------
# kernel and symmetrization


def zeta(x) -> RatFunc:
    """``(1 - x q1)(1 - x q2)(1 - q1 q2 / x) / (1 - x)`` for a monomial ``x``.

    ``x`` must live in a context containing ``q1`` and ``q2``.
    """
    if isinstance(x, LaurentPoly):
        if not x.is_monomial() or next(iter(x.terms.values())) != 1:
            raise ValueError("zeta expects a monic monomial")
        x = Monomial(x.vars, next(iter(x.terms)))
    vars = x.vars
    if x.is_one():
        raise PoleError("zeta has a pole at x = 1")
    try:
        e1 = Monomial.from_dict(vars, {"q1": 1}).exps
        e2 = Monomial.from_dict(vars, {"q2": 1}).exps
    except ContextMismatch:
        raise ContextMismatch("zeta needs q1 and q2 in the context") from None
    e = x.exps
    fac = {}
    for k, m in (
        (tuple(a + b for a, b in zip(e, e1)), 1),
        (tuple(a + b for a, b in zip(e, e2)), 1),
        (tuple(b + c - a for a, b, c in zip(e, e1, e2)), 1),
        (e, -1),
    ):
        fac[k] = fac.get(k, 0) + m
    return RatFunc._build(vars, 1, None, None, None, fac)


def _zeta_into(fac, N, i, j):
    """Add the factors of zeta(z_i / z_j) to a factor dict (raw orientation)."""
    for k, m in (
        (_vec(N, q1=1, z=((i, 1), (j, -1))), 1),
        (_vec(N, q2=1, z=((i, 1), (j, -1))), 1),
        (_vec(N, q1=1, q2=1, z=((i, -1), (j, 1))), 1),
        (_vec(N, z=((i, 1), (j, -1))), -1),
    ):
        fac[k] = fac.get(k, 0) + m


def _split(f: RatFunc):
    """``f = scalar * P / D`` with ``scalar`` z-free and ``D`` a binomial dict."""
    vars = f.vars
    if f.den.involves(vars[2:]):
        raise ValueError("denominator residual involves z; only binomial denominators are supported")
    zero_z = (0,) * (len(vars) - 2)
    qfac, zpos, zneg = {}, {}, {}
    for k, m in f.factors.items():
        if any(k[2:]):
            (zpos if m > 0 else zneg)[k] = abs(m)
        else:
            qfac[k] = m
    scalar = RatFunc._build(vars, f.coeff, f.mono[:2] + zero_z, None, f.den, qfac, cancel=False)
    P = f.num.shift((0, 0) + f.mono[2:])
    for k, m in sorted(zpos.items()):
        P = P.mul_binomial(k, m)
    return scalar, P, zneg


def _permute_vec(v, src):
    return tuple(v[j] for j in src)


def _orbit_closure(den, perms):
    """Smallest binomial dict containing ``den`` and stable under ``perms``."""
    out = dict(den)
    changed = True
    while changed:
        changed = False
        for k, m in list(out.items()):
            for src in perms:
                _, key = _canon(_permute_vec(k, src))
                if out.get(key, 0) < m:
                    out[key] = m
                    changed = True
    return out


def _unit(D, src):
    """``(sign, mono)`` with ``sigma(D) = sign * x^mono * D``."""
    sign = 1
    mono = [0] * len(src)
    for k, m in D.items():
        w = _permute_vec(k, src)
        flipped, key = _canon(w)
        if key not in D or D[key] != m:
            raise InvariantViolation("denominator is not permutation-stable")
        if flipped:
            if m % 2:
                sign = -sign
            for i, a in enumerate(w):
                mono[i] += m * a
    return sign, tuple(mono)


def _z_perm_src(N, tau):
    """Source list realising ``z_i -> z_{tau(i)}`` (0-based ``tau`` over z slots)."""
    src = [0, 1] + [0] * N
    for i, t in enumerate(tau):
        src[2 + t] = 2 + i
    return src


def _sym_core(P: LaurentPoly, den: dict, taus, N) -> LaurentPoly:
    """``sum_tau tau(P / den)`` as a Laurent polynomial."""
    gens = [_z_perm_src(N, t) for t in _adjacent(N)]
    D = _orbit_closure(den, gens)
    for k, m in sorted(D.items()):
        extra = m - den.get(k, 0)
        if extra:
            P = P.mul_binomial(k, extra)
    acc = {}
    get = acc.get
    items = list(P.terms.items())
    for tau in taus:
        src = _z_perm_src(N, tau)
        sign, mono = _unit(D, src)
        neg = tuple(-a for a in mono)
        for e, c in items:
            f = tuple([e[j] + s for j, s in zip(src, neg)])
            acc[f] = get(f, 0) + (c if sign > 0 else -c)
    terms = {e: c for e, c in acc.items() if c}
    for k, m in sorted(D.items()):
        for _ in range(m):
            q = _div_binomial(terms, k)
            if q is None:
                raise InvariantViolation(
                    "symmetrization left a z-dependent denominator"
                )
            terms = q
    return LaurentPoly(P.vars, terms, _trusted=True)


def _adjacent(N):
    out = []
    for i in range(N - 1):
        t = list(range(N))
        t[i], t[i + 1] = t[i + 1], t[i]
        out.append(tuple(t))
    return out


def symmetrize(f, n: int | None = None) -> ShuffleElement:
    """Sum of ``f`` over all permutations of ``z1..zn``.

    ``f`` is a :class:`RatFunc` over ``shuffle_vars(n)`` whose denominator is
    a product of tracked binomials.  Raises :class:`InvariantViolation` if the
    sum still has a z-dependent denominator.
    """
    if isinstance(f, LaurentPoly):
        f = RatFunc.from_poly(f)
    if n is None:
        n = len(f.vars) - 2
    vars = shuffle_vars(n)
    if f.vars != vars:
        f = _rename_into(f, vars)
    if f.is_zero():
        return ShuffleElement.zero(n)
    scalar, P, den = _split(f)
    total = _sym_core(P, den, permutations(range(n)), n)
    return ShuffleElement(n, scalar * RatFunc.from_poly(total))


def _embed(rf, N, offset):
    """Move a degree-k element to ``shuffle_vars(N)``, z_i going to z_{i+offset}."""
    k = len(rf.vars) - 2
    idx = [0, 1] + [None] * N
    for i in range(k):
        idx[2 + offset + i] = 2 + i
    return _transport(rf, shuffle_vars(N), idx)


def _shuffles(n, n2):
    """All ``tau`` sending the first block to a subset S and the second to its complement."""
    N = n + n2
    for S in combinations(range(N), n):
        rest = [i for i in range(N) if i not in S]
        yield tuple(S) + tuple(rest)


def shuffle_mul(a: ShuffleElement, b: ShuffleElement) -> ShuffleElement:
    """Star product, summed over shuffle coset representatives."""
    if a.n == 0:
        return b.scale(_rename_into(a.value, Q_VARS))
    if b.n == 0:
        return a.scale(_rename_into(b.value, Q_VARS))
    if a.is_zero() or b.is_zero():
        return ShuffleElement.zero(a.n + b.n)
    n, n2 = a.n, b.n
    N = n + n2
    sa, Pa, da = _split(_embed(a.value, N, 0))
    sb, Pb, db = _split(_embed(b.value, N, n))
    if da or db:
        raise ValueError("operands must be Laurent in z")
    fac = {}
    for i in range(1, n + 1):
        for j in range(n + 1, N + 1):
            _zeta_into(fac, N, i, j)
    cross = RatFunc._build(shuffle_vars(N), 1, None, Pa * Pb, None, fac)
    sc, P, den = _split(cross)
    total = _sym_core(P, den, _shuffles(n, n2), N)
    return ShuffleElement(N, sa * sb * sc * RatFunc.from_poly(total))


# ---------------------------------------------------------------------------
# generators


def _binom(N, **kw):
    return RatFunc.binomial(shuffle_vars(N), _vec(N, **kw))


def _qpoly(N, q1=0, q2=0, c=1):
    return RatFunc.monomial(shuffle_vars(N), _vec(N, q1=q1, q2=q2), c)


def _kernel_integrand(N, zexps, kind):
    """``z^zexps * prod zeta(z_i/z_j) / prod (chain denominators)`` as a RatFunc."""
    fac = {}
    for i in range(1, N + 1):
        for j in range(i + 1, N + 1):
            _zeta_into(fac, N, i, j)
    for i in range(1, N):
        if kind == "A":  # 1 - z_{i+1} q1 q2 / z_i
            k = _vec(N, q1=1, q2=1, z=((i + 1, 1), (i, -1)))
        elif kind == "prime":  # 1 - z_i q1 / z_{i+1}
            k = _vec(N, q1=1, z=((i, 1), (i + 1, -1)))
        elif kind == "B":  # 1 - z_{i+1} / (z_i q1)
            k = _vec(N, q1=-1, z=((i + 1, 1), (i, -1)))
        else:
            raise ValueError(kind)
        fac[k] = fac.get(k, 0) - 1
    mono = _vec(N, z=tuple((i + 1, a) for i, a in enumerate(zexps)))
    return RatFunc._build(shuffle_vars(N), 1, mono, None, None, fac)


def _assert_integral(el: ShuffleElement, what):
    if not el.is_integral():
        raise InvariantViolation(f"{what} has coefficients outside Z[q1^+-1, q2^+-1]")
    return el


def _sym_generator(N, zexps, kind, prefactor, extra=None):
    f = _kernel_integrand(N, zexps, kind)
    if extra is not None:
        f = f * extra
    return symmetrize(f, N).scale(prefactor)


@lru_cache(maxsize=None)
def gen_H(m: int, n: int) -> ShuffleElement:
    if n < 1:
        raise ValueError("n must be positive")
    pre = _binom(n, q1=1) ** (n - 1) * _binom(n, q2=1) ** n
    el = _sym_generator(n, floor_exponents(m, n), "A", pre)
    return _assert_integral(el, f"H({m},{n})")


@lru_cache(maxsize=None)
def gen_Hprime(m: int, n: int) -> ShuffleElement:
    if n < 1:
        raise ValueError("n must be positive")
    pre = _binom(n, q1=1, q2=1) ** (n - 1) * _binom(n, q2=1) ** n
    el = _sym_generator(n, ceil_exponents(m, n), "prime", pre)
    return _assert_integral(el, f"H'({m},{n})")


def _params(p):
    m, n, d = (int(x) for x in p)
    if d < 1:
        raise ValueError("d must be positive")
    _check_coprime(m, n)
    return m, n, d


@lru_cache(maxsize=None)
def gen_Sbar(p, presentation: str = "A") -> ShuffleElement:
    """The generator of slope ``m/n`` and multiplicity ``d``; ``p = (m, n, d)``."""
    m, n, d = _params(p)
    N = n * d
    zexps = floor_exponents(m, n, N)
    vars = shuffle_vars(N)
    extra = RatFunc.one(vars)
    if presentation == "A":
        pre = _binom(N, q1=1) ** N * _binom(N, q2=1) ** N
        for i in range(1, d + 1):
            pre = pre / _binom(N, q1=i)
        for i in range(1, d):
            # q1^i - z_{ni+1} q1 q2 / z_{ni}
            t = LaurentPoly.monomial(vars, _vec(N, q1=i)) - LaurentPoly.monomial(
                vars, _vec(N, q1=1, q2=1, z=((n * i + 1, 1), (n * i, -1)))
            )
            extra = extra * RatFunc.from_poly(t)
        kind = "A"
    elif presentation == "B":
        pre = _binom(N, q1=-1, q2=-1) ** N * _binom(N, q2=1) ** N
        for i in range(1, d + 1):
            pre = pre / _binom(N, q1=-i, q2=-i)
        for i in range(1, d):
            # q1^-i q2^-i - z_{ni+1} / (z_{ni} q1)
            t = LaurentPoly.monomial(vars, _vec(N, q1=-i, q2=-i)) - LaurentPoly.monomial(
                vars, _vec(N, q1=-1, z=((n * i + 1, 1), (n * i, -1)))
            )
            extra = extra * RatFunc.from_poly(t)
        kind = "B"
    else:
        raise ValueError(f"presentation must be 'A' or 'B', got {presentation!r}")
    el = _sym_generator(N, zexps, kind, pre, extra)
    return _assert_integral(el, f"Sbar({m},{n},{d})")


@lru_cache(maxsize=None)
def gen_Pbar(p) -> ShuffleElement:
    m, n, d = _params(p)
    N = n * d
    vars = shuffle_vars(N)
    pre = _binom(N, q1=1) ** N * _binom(N, q2=1) ** N / _binom(N, q1=d)
    terms = {}
    for i in range(d):
        z = []
        for t in range(d - i, d):
            z += [(n * t + 1, 1), (n * t, -1)]
        e = _vec(N, q1=i, q2=i, z=z)
        terms[e] = terms.get(e, 0) + 1
    extra = RatFunc.from_poly(LaurentPoly(vars, terms))
    el = _sym_generator(N, floor_exponents(m, n, N), "A", pre, extra)
    return _assert_integral(el, f"Pbar({m},{n},{d})")


@lru_cache(maxsize=None)
def gen_R(dvec) -> ShuffleElement:
    dvec = tuple(int(x) for x in dvec)
    n = len(dvec)
    if n < 1:
        raise ValueError("the exponent vector must be nonempty")
    pre = _binom(n, q1=1) ** (n - 1) * _binom(n, q2=1) ** n
    el = _sym_generator(n, dvec, "A", pre)
    return _assert_integral(el, f"R{dvec}")


def _signs(eps):
    out = []
    for s in eps:
        if s in ("+", 1, "p"):
            out.append("+")
        elif s in ("-", -1, "m", "−"):
            out.append("-")
        else:
            raise ValueError(f"bad sign {s!r}")
    return tuple(out)


@lru_cache(maxsize=None)
def _gen_ribbon(m, n, eps):
    d = len(eps) + 1
    N = n * d
    pre = _binom(N, q1=1) ** N * _binom(N, q2=1) ** N
    vars = shuffle_vars(N)
    extra = RatFunc.one(vars)
    for i, s in enumerate(eps, start=1):
        if s == "-":
            extra = extra * RatFunc.monomial(
                vars, _vec(N, q1=1, q2=1, z=((n * i + 1, 1), (n * i, -1))), -1
            )
    el = _sym_generator(N, floor_exponents(m, n, N), "A", pre, extra)
    return _assert_integral(el, f"ribbon({m},{n},{''.join(eps)})")


def gen_ribbon(m: int, n: int, eps) -> ShuffleElement:
    _check_coprime(m, n)
    return _gen_ribbon(m, n, _signs(eps))


@lru_cache(maxsize=None)
def mat_substack_class(n: int) -> ShuffleElement:
    """``prod_{i,j} (1 - z_i q2 / z_j)`` expanded."""
    if n < 1:
        raise ValueError("n must be positive")
    vars = shuffle_vars(n)
    p = LaurentPoly.one(vars)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            p = p.mul_binomial(_vec(n, q2=1, z=((i, 1), (j, -1))))
    return ShuffleElement(n, p)


def flag_pushforward(R, n: int | None = None) -> ShuffleElement:
    """``Sym[R(z) / prod_{i<j} (1 - z_i / z_j)]`` for ``R`` in ``L1..Ln``."""
    if isinstance(R, LaurentPoly):
        R = RatFunc.from_poly(R)
    if n is None:
        n = sum(1 for v in R.vars if v.startswith("L"))
    rename = {f"L{i}": f"z{i}" for i in range(1, n + 1)}
    f = _rename_into(R, shuffle_vars(n), rename)
    fac = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            fac[_vec(n, z=((i, 1), (j, -1)))] = -1
    f = f * RatFunc._build(shuffle_vars(n), 1, None, None, None, fac)
    return symmetrize(f, n)


@lru_cache(maxsize=None)
def eccentric_pushforward(m: int, n: int) -> ShuffleElement:
    """Koszul class of the eccentric flag locus pushed forward to the base."""
    if n < 1:
        raise ValueError("n must be positive")
    vars = flag_vars(n)
    mono = [0, 0] + ceil_exponents(m, n)
    fac = {(1, 1) + (0,) * n: n - 1, (0, 1) + (0,) * n: n}

    def lv(q1=0, q2=0, L=()):
        v = [q1, q2] + [0] * n
        for i, a in L:
            v[1 + i] += a
        return tuple(v)

    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in (
                lv(q1=1, q2=1, L=((j, 1), (i, -1))),
                lv(q2=1, L=((i, 1), (j, -1))),
            ):
                fac[k] = fac.get(k, 0) + 1
            if j >= i + 2:
                k = lv(q1=1, L=((i, 1), (j, -1)))
                fac[k] = fac.get(k, 0) + 1
    R = RatFunc._build(vars, 1, mono, None, None, fac)
    return flag_pushforward(R, n)
