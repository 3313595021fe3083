"""Verification suites run by ``hallshuffle verify``.

Each check returns ``(ok, detail)``; ``run_suite`` times it and collects a
:class:`VerifyReport`.  Checks are independent of each other and of the
disk cache except for the explicit cache spot check.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd

from . import affine as af
from . import oracle
from . import symfunc as sf
from .arith import LaurentPoly, RatFunc, exact_div
from .errors import NotInSpan
from .pbw import column_rank, enumerate_pbw, express, reconstruct
from .shuffle import (
    eccentric_pushforward,
    gen_H,
    gen_Hprime,
    gen_Pbar,
    gen_R,
    gen_ribbon,
    gen_Sbar,
    mat_substack_class,
)
from .solomon import ideal_character, solomon_check

__all__ = ["CheckResult", "VerifyReport", "SUITES", "run_suite", "run"]

H_PAIRS = [(1, 2), (1, 3), (2, 3), (3, 4), (-1, 2)]
ECCENTRIC_PAIRS = [(0, 1), (1, 1), (-1, 1), (1, 2), (-1, 2), (3, 2), (1, 3), (2, 3), (-1, 3)]
PRESENTATIONS = [(0, 1, 2), (0, 1, 3), (1, 1, 2), (1, 2, 2)]
SLOPES = [(0, 1), (1, 1)]


@dataclass
class CheckResult:
    id: str
    status: str
    seconds: float
    detail: str = ""

    def to_json(self):
        return {
            "id": self.id,
            "status": self.status,
            "seconds": f"{self.seconds:.3f}",
            "detail": self.detail,
        }


@dataclass
class VerifyReport:
    results: list = field(default_factory=list)

    @property
    def ok(self):
        return all(r.status != "fail" for r in self.results)

    def to_json(self):
        return {
            "ok": self.ok,
            "checks": [r.to_json() for r in self.results],
        }

    def text(self):
        lines = [
            f"{r.status.upper():7} {r.id} ({r.seconds:.2f}s){': ' + r.detail if r.detail else ''}"
            for r in self.results
        ]
        n_fail = sum(r.status == "fail" for r in self.results)
        lines.append(f"{len(self.results)} checks, {n_fail} failed")
        return "\n".join(lines)


def _q2_power(k):
    return RatFunc.monomial(("q1", "q2"), (0, k))


def _failures(pairs, test):
    bad = [p for p in pairs if not test(*p)]
    return not bad, ("failed for " + ", ".join(map(str, bad))) if bad else f"{len(pairs)} cases"


# ---------------------------------------------------------------------------
# arith


def _random_poly(rng, vars, terms=4, span=2):
    return LaurentPoly(
        vars,
        {
            tuple(rng.randint(-span, span) for _ in vars): Fraction(rng.randint(-4, 4), rng.randint(1, 3))
            for _ in range(rng.randint(0, terms))
        },
    )


def _random_ratfunc(rng, vars):
    f = RatFunc.from_poly(_random_poly(rng, vars))
    for _ in range(rng.randint(0, 2)):
        e = tuple(rng.randint(-1, 1) for _ in vars)
        if any(e):
            f = f / RatFunc.binomial(vars, e)
    return f


def check_ring_axioms(cases=200, seed=1):
    rng = random.Random(seed)
    vars = ("q1", "q2", "z1")
    for _ in range(cases):
        for gen in (_random_poly, _random_ratfunc):
            a, b, c = (gen(rng, vars) for _ in range(3))
            if not (
                (a + b) + c == a + (b + c)
                and a + b == b + a
                and (a * b) * c == a * (b * c)
                and a * b == b * a
                and a * (b + c) == a * b + a * c
                and (a - a).is_zero()
            ):
                return False, f"axiom failed for {a}, {b}, {c}"
    return True, f"{cases} cases each for polynomials and rational functions"


def check_exact_div(cases=200, seed=2):
    rng = random.Random(seed)
    vars = ("q1", "q2", "z1", "z2")
    for _ in range(cases):
        a = _random_poly(rng, vars)
        b = _random_poly(rng, vars)
        if b.is_zero():
            b = LaurentPoly.one(vars)
        if exact_div(a * b, b) != a:
            return False, f"exact_div(a*b, b) != a for a = {a}, b = {b}"
    return True, f"{cases} cases"


def check_serialization(cases=100, seed=3):
    rng = random.Random(seed)
    vars = ("q1", "q2", "z1")
    for _ in range(cases):
        f = _random_ratfunc(rng, vars)
        g = RatFunc.from_json(f.to_json())
        if g != f or g.to_json() != f.to_json():
            return False, f"round trip changed {f}"
    return True, f"{cases} cases"


# ---------------------------------------------------------------------------
# shuffle


def check_h_hprime():
    return _failures(H_PAIRS, lambda m, n: gen_H(m, n) == gen_Hprime(m, n).scale(_q2_power(n - 1)))


def check_hprime_h():
    return _failures(H_PAIRS, lambda m, n: gen_Hprime(m, n) == gen_H(m, n).scale(_q2_power(n - 1)))


def check_eccentric():
    return _failures(ECCENTRIC_PAIRS, lambda m, n: eccentric_pushforward(m, n) == gen_Hprime(m, n))


def check_substack():
    q1 = RatFunc.var(("q1", "q2"), "q1")
    return _failures(
        [(1,), (2,), (3,)],
        lambda n: gen_Sbar((0, 1, n)) == mat_substack_class(n).scale(q1 ** (n * (n - 1) // 2)),
    )


def check_presentations():
    return _failures(PRESENTATIONS, lambda m, n, d: gen_Sbar((m, n, d)) == gen_Sbar((m, n, d), "B"))


def check_commutativity():
    def test(m, n):
        a, b = gen_Sbar((m, n, 1)), gen_Sbar((m, n, 2))
        return a * b == b * a

    return _failures(SLOPES, test)


def _sbar_fn(m, n, d):
    return lambda q1, q2, zs: oracle.Sbar(m, n, d, q1, q2, zs)


def check_commutativity_pointwise(points=3, seed=4):
    """Slope 1/2 on six variables, through the oracle only."""
    rng = random.Random(seed)
    a, b = _sbar_fn(1, 2, 1), _sbar_fn(1, 2, 2)
    for _ in range(points):
        q1, q2, z = oracle.random_point(6, rng)
        lhs = oracle.shuffle_cosets(a, 2, b, 4, q1, q2, z)
        rhs = oracle.shuffle_cosets(b, 4, a, 2, q1, q2, z)
        if lhs != rhs:
            return False, f"differ at q1={q1}, q2={q2}, z={z}"
    return True, f"{points} points"


def _agrees(element, value_fn, N, rng, points):
    for _ in range(points):
        q1, q2, z = oracle.random_point(N, rng)
        if element.evaluate(oracle.point_dict(q1, q2, z)) != value_fn(q1, q2, z):
            return False
    return True


def check_oracle(points=3, seed=5):
    """Every symbolic generator used above against direct evaluation."""
    rng = random.Random(seed)
    cases = []
    for m, n in H_PAIRS:
        cases.append((f"H{m, n}", gen_H(m, n), lambda a, b, z, m=m, n=n: oracle.H(m, n, a, b, z), n))
        cases.append(
            (f"H'{m, n}", gen_Hprime(m, n), lambda a, b, z, m=m, n=n: oracle.H(m, n, a, b, z, True), n)
        )
    for m, n in ECCENTRIC_PAIRS:
        cases.append(
            (f"ecc{m, n}", eccentric_pushforward(m, n), lambda a, b, z, m=m, n=n: oracle.eccentric(m, n, a, b, z), n)
        )
    for n in (1, 2, 3):
        cases.append((f"mat{n}", mat_substack_class(n), lambda a, b, z, n=n: oracle.mat_class(n, a, b, z), n))
    for m, n, d in PRESENTATIONS:
        for pres in "AB":
            cases.append(
                (
                    f"Sbar{m, n, d}{pres}",
                    gen_Sbar((m, n, d), pres),
                    lambda a, b, z, p=(m, n, d), pres=pres: oracle.Sbar(*p, a, b, z, pres),
                    n * d,
                )
            )
    for m, n in SLOPES:
        A, B = gen_Sbar((m, n, 1)), gen_Sbar((m, n, 2))
        fa, fb = _sbar_fn(m, n, 1), _sbar_fn(m, n, 2)
        cases.append(
            (f"Sbar{m, n}*Sbar{2 * m, 2 * n}", A * B, lambda a, b, z, fa=fa, fb=fb, n=n: oracle.shuffle(fa, n, fb, 2 * n, a, b, z), 3 * n)
        )
    bad = [name for name, el, fn, N in cases if not _agrees(el, fn, N, rng, points)]
    # the identities themselves, pointwise and purely through the oracle
    for m, n in H_PAIRS:
        q1, q2, z = oracle.random_point(n, rng)
        if oracle.H(m, n, q1, q2, z, True) != q2 ** (n - 1) * oracle.H(m, n, q1, q2, z):
            bad.append(f"H'=q2^(n-1)H{m, n}")
    if bad:
        return False, "disagreement: " + ", ".join(bad)
    return True, f"{len(cases)} elements at {points} points each"


# ---------------------------------------------------------------------------
# symfunc


def check_phi():
    bad = []
    one_minus_q1 = RatFunc.binomial(("q1", "q2"), (1, 0))
    for m, n in SLOPES:
        for d in (1, 2):
            if sf.phi_slope(m, n, sf.ebar(d)) != gen_Sbar((m, n, d)):
                bad.append(f"ebar{d}@{m}/{n}")
            if sf.phi_slope(m, n, sf.pbar(d)) != gen_Pbar((m, n, d)):
                bad.append(f"pbar{d}@{m}/{n}")
            if sf.phi_slope(m, n, sf.h(d)) != gen_H(m * d, n * d).scale(one_minus_q1):
                bad.append(f"h{d}@{m}/{n}")
    for eps in ("+", "-"):
        if sf.phi_slope(1, 1, sf.ribbon(eps, "modified")) != gen_ribbon(1, 1, eps):
            bad.append(f"ribbon{eps}@1/1")
    return not bad, ("failed: " + ", ".join(bad)) if bad else "all images agree"


def _sign_seqs(max_len):
    for k in range(max_len + 1):
        yield from ("".join(s) for s in product("+-", repeat=k))


def check_ribbons():
    bad = []
    for kind in ("barred", "modified"):
        for a in _sign_seqs(2):
            for b in _sign_seqs(2):
                if len(a) + len(b) + 2 > 4:
                    continue
                lhs = sf.ribbon(a, kind) * sf.ribbon(b, kind)
                rhs = sf.ribbon(a + "+" + b, kind) + sf.ribbon(a + "-" + b, kind)
                if lhs != rhs:
                    bad.append(f"product {a}|{b} {kind}")
    for d in range(1, 5):
        if sf.h(d) != sf.ribbon("+" * (d - 1), "modified"):
            bad.append(f"h{d}")
        if sf.hbar(d) != sf.ribbon("+" * (d - 1), "barred"):
            bad.append(f"hbar{d}")
    for d in range(1, 4):
        if sf.e_to_ribbon(d) != sf.ebar(d):
            bad.append(f"e_to_ribbon{d}")
    q1 = RatFunc.var(("q1", "q2"), "q1")
    half = Fraction(1, 2)
    p1, p2 = sf.pbar(1), sf.pbar(2)
    s_plus, s_minus = sf.ribbon("+", "modified"), sf.ribbon("-", "modified")
    one_minus = 1 - q1
    example = [
        sf.ribbon("+", "barred") == (p1 * p1 + p2) * half,
        sf.ribbon("-", "barred") == (p1 * p1 - p2) * half,
        s_plus / one_minus == sf.hbar(2) - sf.ebar(2) * q1,
        s_minus / one_minus == sf.ebar(2) - sf.hbar(2) * q1,
    ]
    if not all(example):
        bad.append("n=2 example")
    return not bad, ("failed: " + ", ".join(bad)) if bad else "product rule, h, e and example identities"


# ---------------------------------------------------------------------------
# affine


def check_centralizer(depth=4):
    cases = [(m, n, d) for n in range(1, 5) for d in range(1, 5) if n * d <= 4 for m in range(-2, 3) if gcd(m, n) == 1]
    count = 0
    for m, n, d in cases:
        N = n * d
        target = af.omega(N) ** (m * d)
        _, pred = af.centralizer_data(m, n, d)
        for v in af.words_up_to(N, depth):
            count += 1
            if pred(v) != (v * target == target * v):
                return False, f"predicate wrong at {(m, n, d)} for {v}"
    return True, f"{len(cases)} (m, n, d) triples, {count} elements"


def check_cycles():
    bad = []
    for m, n, d in [(1, 2, 2), (1, 1, 3), (2, 3, 1)]:
        N = n * d
        w = af.omega(N) ** (m * d)
        if sorted(af.cycle_data(w)) != [(n, m)] * d:
            bad.append(f"omega^{m * d} in rank {N}")
        for i in range(1, d):
            w = w * af.sigma(i, N)
        if af.cycle_data(w) != [(N, m * d)]:
            bad.append(f"omega^{m * d} sigma_1..sigma_{d - 1} in rank {N}")
    return not bad, ("failed: " + ", ".join(bad)) if bad else "3 triples"


def check_y_commute():
    for n in range(1, 5):
        ys = [af.y(i, n) for i in range(1, n + 1)]
        for a in ys:
            if a.degree != 1:
                return False, f"deg y != 1 at n={n}"
            for b in ys:
                if a * b != b * a:
                    return False, f"y's do not commute at n={n}"
    return True, "n <= 4"


def check_length_bfs(depth=6):
    for n in (2, 3):
        for v, dist in af.bfs_lengths(n, depth).items():
            if af.length(v) != dist:
                return False, f"length({v}) = {af.length(v)} but BFS gives {dist}"
    return True, f"n in (2, 3), depth {depth}"


# ---------------------------------------------------------------------------
# solomon


def _solomon(n):
    r = solomon_check(n)
    if not r.ok:
        return False, f"n={n}: dims {r.dims} sum {r.total}, direct={r.direct}"
    bad = [
        "".join(e) for e in product("+-", repeat=n - 1) if ideal_character(e) != sf.ribbon(e, "barred")
    ]
    if bad:
        return False, f"n={n}: character mismatch for {bad}"
    return True, f"n={n}: sum of dims {r.total}, direct, characters agree"


def check_solomon_small():
    details = []
    for n in range(1, 5):
        ok, detail = _solomon(n)
        if not ok:
            return ok, detail
        details.append(detail)
    return True, "; ".join(details)


def check_solomon_5():
    return _solomon(5)


# ---------------------------------------------------------------------------
# pbw


def _express_widening(target, window, widen=2, **kw):
    lo, hi = window
    for _ in range(widen + 1):
        try:
            return (lo, hi), express(target, (lo, hi), **kw)
        except NotInSpan:
            lo, hi = lo - 1, hi + 1
    raise NotInSpan(f"not reached within window {lo + 1, hi - 1}")


def check_pbw():
    bad = []
    for (n, m), w in [((2, 0), (-1, 1)), ((2, 1), (0, 1)), ((2, 0), (0, 2)), ((2, 1), (-1, 1))]:
        idx = enumerate_pbw(n, m, w)
        if column_rank(idx) != len(idx):
            bad.append(f"rank {(n, m)} window {w}")
    targets = [
        (gen_Sbar((0, 1, 2)), (0, 0), False),
        (gen_R((0, 1)), (0, 1), False),
        (gen_R((1, 0)), (0, 1), False),
        (gen_R((2, -1)), (-1, 2), False),
    ]
    for m, n in [(0, 1), (1, 1), (-1, 1), (0, 2), (1, 2), (-1, 2), (3, 2)]:
        s = Fraction(m, n)
        targets.append((gen_H(m, n), (s.__floor__(), s.__ceil__()), True))
    solved = 0
    for target, window, integral in targets:
        try:
            _, coeffs = _express_widening(target, window, assert_integral=integral)
        except Exception as exc:  # report, don't crash the suite
            bad.append(f"{type(exc).__name__}: {exc}")
            continue
        if reconstruct(coeffs, target.n) != target:
            bad.append("reconstruction")
        solved += 1
    return not bad, ("failed: " + ", ".join(bad)) if bad else f"{solved} targets solved exactly, ranks full"


# ---------------------------------------------------------------------------
# cache


def check_cache(cache):
    """Cached ``gen`` payloads match fresh recomputation."""
    from .cli import GEN_SPOT_CHECKS, generate_payload

    if cache is None or cache.directory is None:
        return True, "no cache directory in use"
    seen = 0
    for kind, args in GEN_SPOT_CHECKS:
        hit = cache.get("gen", [kind, args])
        if hit is None:
            continue
        seen += 1
        if hit != generate_payload(kind, args):
            return False, f"stale cache entry for gen {kind} {args}"
    return True, f"{seen} cached entries matched"


SUITES = {
    "arith": [
        ("arith.ring_axioms", check_ring_axioms, False),
        ("arith.exact_div", check_exact_div, False),
        ("arith.serialization", check_serialization, False),
    ],
    "shuffle": [
        ("shuffle.H_equals_q2pow_Hprime", check_h_hprime, False),
        ("shuffle.Hprime_equals_q2pow_H", check_hprime_h, False),
        ("shuffle.eccentric_pushforward", check_eccentric, False),
        ("shuffle.substack", check_substack, False),
        ("shuffle.presentations", check_presentations, False),
        ("shuffle.slope_commutativity", check_commutativity, False),
        ("shuffle.oracle_agreement", check_oracle, False),
        ("shuffle.slope_commutativity_half_pointwise", check_commutativity_pointwise, False),
    ],
    "symfunc": [
        ("symfunc.phi", check_phi, False),
        ("symfunc.ribbons", check_ribbons, False),
    ],
    "affine": [
        ("affine.centralizer", check_centralizer, False),
        ("affine.cycles", check_cycles, False),
        ("affine.y_commute", check_y_commute, False),
        ("affine.length_bfs", check_length_bfs, False),
    ],
    "solomon": [
        ("solomon.n_le_4", check_solomon_small, False),
        ("solomon.n_5", check_solomon_5, True),
    ],
    "pbw": [
        ("pbw.expansions", check_pbw, False),
    ],
}


def run_suite(name, *, long=False, cache=None, report=None, progress=None):
    report = report or VerifyReport()
    names = list(SUITES) if name == "all" else [name]
    for suite in names:
        if suite not in SUITES:
            raise ValueError(f"unknown suite {suite!r}")
        for cid, fn, needs_long in SUITES[suite]:
            if needs_long and not long:
                report.results.append(CheckResult(cid, "skipped", 0.0, "needs --long"))
                continue
            t = time.perf_counter()
            try:
                ok, detail = fn()
            except Exception as exc:
                ok, detail = False, f"{type(exc).__name__}: {exc}"
            res = CheckResult(cid, "pass" if ok else "fail", time.perf_counter() - t, detail)
            report.results.append(res)
            if progress:
                progress(res)
    if name == "all" or cache is not None:
        t = time.perf_counter()
        ok, detail = check_cache(cache)
        report.results.append(CheckResult("cli.cache_transparency", "pass" if ok else "fail", time.perf_counter() - t, detail))
    return report


def run(name="all", **kw):
    return run_suite(name, **kw)
