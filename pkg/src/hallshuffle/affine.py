"""Extended affine symmetric group in window notation.

An element is an ``n``-periodic bijection ``v`` of the integers,
``v(i + n) = v(i) + n``, stored through its window ``(v(1), ..., v(n))``.
Composition is ``(a * b)(i) = a(b(i))``.
"""
from __future__ import annotations

import re
from collections import deque
from fractions import Fraction
from itertools import combinations
from math import gcd

from .errors import CoprimalityError, SizeBoundExceeded

__all__ = [
    "AffinePerm",
    "omega",
    "sigma",
    "y",
    "make",
    "compose",
    "inverse",
    "normal_form",
    "length",
    "reduced_word",
    "bruhat_leq",
    "centralizer_data",
    "cycle_data",
    "convex_path",
    "zhat_invariance",
    "bfs_lengths",
    "words_up_to",
    "min_length_in_class",
    "parse_word",
    "BRUHAT_MAX_LENGTH",
]

BRUHAT_MAX_LENGTH = 10


class AffinePerm:
    __slots__ = ("n", "window")

    def __init__(self, n: int, window):
        window = tuple(int(x) for x in window)
        if n < 1 or len(window) != n:
            raise ValueError(f"window of length {len(window)} does not match n = {n}")
        if len({x % n for x in window}) != n:
            raise ValueError(f"window {window} does not define a bijection")
        if (sum(window) - n * (n + 1) // 2) % n:
            raise ValueError(f"window {window} has non-integral degree")
        self.n = n
        self.window = window

    @classmethod
    def identity(cls, n):
        return cls(n, range(1, n + 1))

    def __call__(self, i: int) -> int:
        k, r = divmod(i - 1, self.n)
        return self.window[r] + k * self.n

    def __mul__(self, other):
        if not isinstance(other, AffinePerm):
            return NotImplemented
        return compose(self, other)

    def __pow__(self, k):
        if k < 0:
            return inverse(self) ** (-k)
        out = AffinePerm.identity(self.n)
        for _ in range(k):
            out = compose(out, self)
        return out

    def __eq__(self, other):
        return (
            isinstance(other, AffinePerm)
            and self.n == other.n
            and self.window == other.window
        )

    def __hash__(self):
        return hash((self.n, self.window))

    def __repr__(self):
        return f"AffinePerm({self.n}, {list(self.window)})"

    @property
    def degree(self) -> int:
        return (sum(self.window) - self.n * (self.n + 1) // 2) // self.n

    def is_identity(self):
        return self.window == tuple(range(1, self.n + 1))

    def to_json(self):
        return {"n": self.n, "window": list(self.window)}

    @classmethod
    def from_json(cls, obj):
        return cls(int(obj["n"]), obj["window"])


def compose(a: AffinePerm, b: AffinePerm) -> AffinePerm:
    if a.n != b.n:
        raise ValueError("cannot compose elements of different rank")
    return AffinePerm(a.n, (a(x) for x in b.window))


def inverse(a: AffinePerm) -> AffinePerm:
    n = a.n
    out = [0] * n
    for i, w in enumerate(a.window, start=1):
        k, r = divmod(w - 1, n)
        out[r] = i - k * n
    return AffinePerm(n, out)


def omega(n: int) -> AffinePerm:
    return AffinePerm(n, range(2, n + 2))


def sigma(i: int, n: int) -> AffinePerm:
    """Simple reflection swapping ``i`` and ``i+1`` (periodically), ``0 <= i < n``."""
    if n < 2:
        raise ValueError("simple reflections need n >= 2")
    if not 0 <= i < n:
        raise ValueError(f"sigma index {i} out of range 0..{n - 1}")
    w = list(range(1, n + 1))
    if i == 0:
        w[0], w[-1] = 0, n + 1
    else:
        w[i - 1], w[i] = i + 1, i
    return AffinePerm(n, w)


def _word(n, letters):
    out = AffinePerm.identity(n)
    for g in letters:
        out = compose(out, g)
    return out


def y(i: int, n: int) -> AffinePerm:
    """``sigma_{i-1} ... sigma_1 omega sigma_{n-1} ... sigma_i`` for ``1 <= i <= n``."""
    if not 1 <= i <= n:
        raise ValueError(f"y index {i} out of range 1..{n}")
    if n == 1:
        return omega(1)
    left = [sigma(j, n) for j in range(i - 1, 0, -1)]
    right = [sigma(j, n) for j in range(n - 1, i - 1, -1)]
    return _word(n, left + [omega(n)] + right)


def make(gen: str, n: int, i: int | None = None) -> AffinePerm:
    if gen == "omega":
        return omega(n)
    if gen == "sigma":
        return sigma(i, n)
    if gen == "y":
        return y(i, n)
    raise ValueError(f"unknown generator {gen!r}")


def normal_form(v: AffinePerm):
    """``(k, alpha)`` with ``v = omega^k alpha`` and ``deg(alpha) = 0``."""
    k = v.degree
    alpha = compose(omega(v.n) ** (-k), v)
    return k, alpha


def length(v: AffinePerm) -> int:
    """Coxeter length of the degree-zero part.

    Counts affine inversions: ``sum_{1 <= i < j <= n} |floor((v(j) - v(i)) / n)|``.
    Multiplying by a power of ``omega`` shifts every value equally and so does
    not change the count.
    """
    n, w = v.n, v.window
    return sum(abs((w[j] - w[i]) // n) for i, j in combinations(range(n), 2))


def reduced_word(v: AffinePerm):
    """Reduced word ``[i1, ..., il]`` with ``alpha = sigma_i1 ... sigma_il``."""
    _, alpha = normal_form(v)
    n = v.n
    word = []
    cur = alpha
    while not cur.is_identity():
        ell = length(cur)
        for i in range(n):
            nxt = compose(cur, sigma(i, n))
            if length(nxt) < ell:
                word.append(i)
                cur = nxt
                break
        else:  # pragma: no cover - a nonidentity element always has a descent
            raise AssertionError("no descent found")
    return word[::-1]


def bruhat_leq(u: AffinePerm, v: AffinePerm, max_length: int = BRUHAT_MAX_LENGTH) -> bool:
    """Bruhat order via the subword property on one reduced word of ``v``."""
    if u.n != v.n:
        raise ValueError("elements of different rank")
    ku, a = normal_form(u)
    kv, b = normal_form(v)
    if ku != kv:
        return False
    lb = length(b)
    if lb > max_length:
        raise SizeBoundExceeded(
            f"length {lb} exceeds the subword enumeration bound {max_length}"
        )
    la = length(a)
    if la > lb:
        return False
    if la == lb:
        return a == b
    n = u.n
    word = [sigma(i, n) for i in reduced_word(b)]
    for pos in combinations(range(lb), la):
        if _word(n, [word[p] for p in pos]) == a:
            return True
    return False


def centralizer_data(m: int, n: int, d: int):
    """Generators and membership predicate for the centralizer of ``omega^{md}``.

    Works in rank ``nd``.  The generators are ``omega`` and
    ``sigma_i sigma_{i+d} ... sigma_{i+nd-d}`` for ``0 <= i < d``.
    """
    if n < 1 or d < 1:
        raise ValueError("n and d must be positive")
    if gcd(m, n) != 1:
        raise CoprimalityError(m, n)
    N = n * d
    gens = [omega(N)]
    if N >= 2 and d >= 2:
        for i in range(d):
            gens.append(_word(N, [sigma((i + k * d) % N, N) for k in range(n)]))
    shift = m * d

    def predicate(v: AffinePerm) -> bool:
        return all(v(i + shift) == v(i) + shift for i in range(1, N + 1))

    return gens, predicate


def cycle_data(v: AffinePerm):
    """``[(length, degree), ...]`` for the cycles of the projection to ``S_n``.

    A cycle ``i_1 -> ... -> i_k -> i_1`` with ``v(i_t) = i_{t+1} + n c_t``
    has degree ``sum c_t``.  Cycles are listed by their smallest element.
    """
    n = v.n
    seen = [False] * (n + 1)
    out = []
    for start in range(1, n + 1):
        if seen[start]:
            continue
        i, ell, deg = start, 0, 0
        while not seen[i]:
            seen[i] = True
            w = v(i)
            nxt = (w - 1) % n + 1
            deg += (w - nxt) // n
            ell += 1
            i = nxt
        out.append((ell, deg))
    return out


def convex_path(v: AffinePerm):
    """Cycle ``(degree, length)`` pairs sorted by slope, ties by length."""
    pairs = [(deg, ell) for ell, deg in cycle_data(v)]
    return sorted(pairs, key=lambda p: (Fraction(p[0], p[1]), p[1]))


def zhat_invariance(i: int, d: int, n: int, m: int) -> bool:
    """``{i, i+d, ..., i+nd-d}`` mod ``nd`` is stable under adding ``md``."""
    if gcd(m, n) != 1:
        raise CoprimalityError(m, n)
    N = n * d
    base = {(i + k * d) % N for k in range(n)}
    return base == {(x + m * d) % N for x in base}


# ---------------------------------------------------------------------------
# brute-force helpers


def bfs_lengths(n: int, depth: int) -> dict:
    """Word length in ``sigma_0..sigma_{n-1}`` for everything within ``depth``."""
    gens = [sigma(i, n) for i in range(n)]
    start = AffinePerm.identity(n)
    dist = {start: 0}
    frontier = deque([start])
    while frontier:
        cur = frontier.popleft()
        if dist[cur] == depth:
            continue
        for g in gens:
            nxt = compose(cur, g)
            if nxt not in dist:
                dist[nxt] = dist[cur] + 1
                frontier.append(nxt)
    return dist


def words_up_to(n: int, depth: int, *, with_omega=True) -> set:
    """All products of at most ``depth`` generators (``omega^{+-1}`` optional)."""
    gens = [sigma(i, n) for i in range(n)] if n >= 2 else []
    if with_omega:
        gens += [omega(n), inverse(omega(n))]
    seen = {AffinePerm.identity(n)}
    layer = set(seen)
    for _ in range(depth):
        nxt = {compose(a, g) for a in layer for g in gens} - seen
        seen |= nxt
        layer = nxt
    return seen


def min_length_in_class(v: AffinePerm, bound: int = 4):
    """Smallest length among ``w v w^-1`` for ``w`` of word length ``<= bound``.

    Returns ``(min_length, v_attains_it)``; this is a bounded search, not a proof.
    """
    best = length(v)
    for w in words_up_to(v.n, bound):
        c = compose(compose(w, v), inverse(w))
        best = min(best, length(c))
    return best, best == length(v)


def parse_word(text: str, n: int) -> AffinePerm:
    """Compose tokens ``s0``, ``s1``, ..., ``w``, ``w^-1``, ``y1``, ... left to right."""
    out = AffinePerm.identity(n)
    for match in re.finditer(r"\S+", text):
        tok, pos = match.group(), match.start()
        if tok == "w":
            g = omega(n)
        elif tok in ("w^-1", "W"):
            g = inverse(omega(n))
        elif tok.startswith("w^") and tok[2:].lstrip("-").isdigit():
            g = omega(n) ** int(tok[2:])
        elif tok[0] == "s" and tok[1:].isdigit():
            g = sigma(int(tok[1:]), n)
        elif tok[0] == "y" and tok[1:].isdigit():
            g = y(int(tok[1:]), n)
        elif tok == "e":
            g = AffinePerm.identity(n)
        else:
            raise ValueError(f"unknown token {tok!r} at position {pos}")
        out = compose(out, g)
    return out
