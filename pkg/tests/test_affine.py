import json
import random
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hallshuffle import affine as af
from hallshuffle.errors import CoprimalityError, SizeBoundExceeded


def word(n, letters):
    out = af.AffinePerm.identity(n)
    for g in letters:
        out = out * g
    return out


def random_elem(n, rng, length=6):
    gens = [af.sigma(i, n) for i in range(n)] + [af.omega(n), af.inverse(af.omega(n))]
    return word(n, [rng.choice(gens) for _ in range(length)])


def elements(n):
    return st.lists(st.integers(0, n + 1), max_size=8).map(
        lambda idx: word(n, [af.omega(n) if i == n else af.inverse(af.omega(n)) if i == n + 1 else af.sigma(i, n) for i in idx])
    )


def test_generators():
    w = af.omega(3)
    assert w.window == (2, 3, 4) and w.degree == 1
    s0 = af.sigma(0, 2)
    assert s0.window == (0, 3)
    assert (s0 * s0).is_identity()
    assert af.make("y", 3, 2) == af.y(2, 3)
    with pytest.raises(ValueError):
        af.sigma(3, 3)
    with pytest.raises(ValueError):
        af.y(0, 3)
    with pytest.raises(ValueError):
        af.AffinePerm(2, (1, 3))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_presentation_relations(n):
    w = af.omega(n)
    s = [af.sigma(i, n) for i in range(n)]
    for i in range(n):
        assert (s[i] * s[i]).is_identity()
        assert w * s[i] * af.inverse(w) == s[(i + 1) % n]
        for j in range(n):
            d = min((i - j) % n, (j - i) % n)
            if d >= 2:
                assert s[i] * s[j] == s[j] * s[i]
            elif d == 1 and n > 2:
                assert s[i] * s[j] * s[i] == s[j] * s[i] * s[j]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_y_commute_and_degree(n):
    ys = [af.y(i, n) for i in range(1, n + 1)]
    for a in ys:
        assert a.degree == 1
        for b in ys:
            assert a * b == b * a


def test_normal_form_examples():
    w = af.omega(3)
    k, alpha = af.normal_form(w ** 3)
    assert k == 3 and alpha.is_identity()
    s1 = af.sigma(1, 3)
    assert af.normal_form(s1) == (0, s1)
    k, alpha = af.normal_form(af.y(1, 2))
    assert k == 1 and alpha.degree == 0
    assert af.omega(2) * alpha == af.y(1, 2)


def test_length_examples():
    for k in (-2, 0, 3):
        assert af.length(af.omega(3) ** k) == 0
    for i in range(3):
        assert af.length(af.sigma(i, 3)) == 1
    assert af.length(af.omega(2) ** 2 * af.sigma(1, 2)) == 1


@pytest.mark.parametrize("n", [2, 3])
def test_length_against_bfs(n):
    for v, dist in af.bfs_lengths(n, 6).items():
        assert af.length(v) == dist


def test_reduced_word_reassembles():
    rng = random.Random(3)
    for _ in range(30):
        v = random_elem(3, rng)
        k, alpha = af.normal_form(v)
        rw = af.reduced_word(v)
        assert len(rw) == af.length(v)
        assert word(3, [af.sigma(i, 3) for i in rw]) == alpha


def test_bruhat_examples():
    n = 3
    s0, s1 = af.sigma(0, n), af.sigma(1, n)
    assert af.bruhat_leq(s0, s0 * s1 * s0)
    assert af.bruhat_leq(af.AffinePerm.identity(n), s0 * s1)
    w = af.omega(2)
    assert not af.bruhat_leq(w * af.sigma(1, 2), w * w * af.sigma(1, 2))
    assert not af.bruhat_leq(s0 * s1, s1)
    long = word(2, [af.sigma(i % 2, 2) for i in range(11)])
    with pytest.raises(SizeBoundExceeded):
        af.bruhat_leq(af.sigma(0, 2), long)


def test_centralizer_examples():
    gens, pred = af.centralizer_data(3, 1, 1)
    assert gens == [af.omega(1)]
    gens, pred = af.centralizer_data(1, 2, 2)
    w2 = af.omega(4) ** 2
    s13 = af.sigma(1, 4) * af.sigma(3, 4)
    assert s13 in gens
    for g in gens:
        assert g * w2 == w2 * g
        assert pred(g)
    assert not pred(af.sigma(1, 4))
    with pytest.raises(CoprimalityError):
        af.centralizer_data(2, 2, 1)


def test_centralizer_predicate_exhaustive():
    for n in range(1, 5):
        for d in range(1, 5):
            if n * d > 4:
                continue
            for m in range(-2, 3):
                if gcd(m, n) != 1:
                    continue
                N = n * d
                target = af.omega(N) ** (m * d)
                _, pred = af.centralizer_data(m, n, d)
                for v in af.words_up_to(N, 4):
                    assert pred(v) == (v * target == target * v)


def test_cycle_examples():
    assert af.cycle_data(af.AffinePerm.identity(3)) == [(1, 0)] * 3
    for m, n, d in [(1, 2, 2), (1, 1, 3), (2, 3, 1)]:
        N = n * d
        w = af.omega(N) ** (m * d)
        assert af.cycle_data(w) == [(n, m)] * d
        for i in range(1, d):
            w = w * af.sigma(i, N)
        assert af.cycle_data(w) == [(N, m * d)]


def test_convex_path_examples():
    w2 = af.omega(4) ** 2
    assert af.convex_path(w2) == [(1, 2), (1, 2)]
    assert af.convex_path(w2 * af.sigma(1, 4)) == [(2, 4)]
    assert af.convex_path(af.sigma(1, 2)) == [(0, 2)]


def test_zhat():
    assert af.zhat_invariance(1, 2, 2, 1)
    for n in range(1, 5):
        for d in range(1, 4):
            for m in range(-3, 4):
                if gcd(m, n) == 1:
                    for i in range(n * d):
                        assert af.zhat_invariance(i, d, n, m)
    with pytest.raises(CoprimalityError):
        af.zhat_invariance(0, 1, 2, 2)


def test_minimal_length_bounded():
    w2 = af.omega(4) ** 2
    assert af.min_length_in_class(w2, 3) == (0, True)
    best, attained = af.min_length_in_class(w2 * af.sigma(1, 4), 3)
    assert attained and best == 1


def test_parse_word():
    assert af.parse_word("w w s1", 4) == af.omega(4) ** 2 * af.sigma(1, 4)
    assert af.parse_word("w^-1 w", 3).is_identity()
    assert af.parse_word("y2", 3) == af.y(2, 3)
    with pytest.raises(ValueError, match="position 2"):
        af.parse_word("w q", 3)


def test_json_round_trip():
    v = af.y(2, 3)
    assert af.AffinePerm.from_json(json.loads(json.dumps(v.to_json()))) == v


@settings(max_examples=100)
@given(elements(3), elements(3), elements(3))
def test_group_properties(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert (a * af.inverse(a)).is_identity()
    assert (a * b).degree == a.degree + b.degree
    assert sum(deg for _, deg in af.cycle_data(a)) == a.degree
    assert sum(ell for ell, _ in af.cycle_data(a)) == 3
    assert af.length(af.omega(3) * a) == af.length(a)
    k, alpha = af.normal_form(a)
    assert af.omega(3) ** k * alpha == a and alpha.degree == 0
