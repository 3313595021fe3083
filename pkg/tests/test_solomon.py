import json
import random
from itertools import permutations, product
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hallshuffle import solomon as so
from hallshuffle.errors import SizeBoundExceeded
from hallshuffle.linalg import rref
from hallshuffle.symfunc import ribbon


def descent_count(eps):
    """Permutations whose descent set is the '-' positions (a ribbon's SYT count)."""
    n = len(eps) + 1
    want = {i for i, s in enumerate(eps, start=1) if s == "-"}
    return sum(
        1
        for w in permutations(range(n))
        if {i for i in range(1, n) if w[i - 1] > w[i]} == want
    )


def test_symmetrizer_example():
    n = 3
    e, a = so.symmetrizer("+-"), so.antisymmetrizer("+-")
    s1 = so.simple_transposition(1, n)
    s2 = so.simple_transposition(2, n)
    ident = so.GroupAlgElem.identity(n)
    assert e == ident + so.GroupAlgElem.of(s1)
    assert a == ident - so.GroupAlgElem.of(s2)
    expected = (
        ident + so.GroupAlgElem.of(s1) - so.GroupAlgElem.of(s2)
        - so.GroupAlgElem.of(so.compose(s1, s2))
    )
    assert e * a == expected


def test_full_symmetrizers():
    assert len(so.symmetrizer("++").terms) == 6
    a = so.antisymmetrizer("---")
    assert len(a.terms) == 24
    assert sum(a.terms.values()) == 0


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_dimensions_are_descent_counts(n):
    for eps in product("+-", repeat=n - 1):
        assert so.ideal_dimension("".join(eps)) == descent_count(eps)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_solomon_decomposition(n):
    report = so.solomon_check(n)
    assert report.total == factorial(n)
    assert report.direct and report.ok


@pytest.mark.long
def test_solomon_decomposition_five():
    assert so.solomon_check(5).ok


def test_size_bounds():
    with pytest.raises(SizeBoundExceeded):
        so.solomon_check(6)
    with pytest.raises(SizeBoundExceeded):
        so.ideal_dimension("++++++")
    with pytest.raises(SizeBoundExceeded):
        so.ideal_character("+++++")


@pytest.mark.parametrize("n", [2, 3, 4])
def test_characters_are_barred_ribbons(n):
    for eps in product("+-", repeat=n - 1):
        eps = "".join(eps)
        assert so.ideal_character(eps) == ribbon(eps, "barred")


def test_ideal_is_left_invariant():
    rng = random.Random(1)
    basis = so.ideal_basis("+-+")
    order = list(permutations(range(4)))
    rows = [b.vector(order) for b in basis]
    for _ in range(5):
        w = rng.choice(order)
        v = basis[rng.randrange(len(basis))].left_mul_perm(w)
        # appending an element of the ideal keeps the rank
        assert rref(rows + [v.vector(order)])[1] == rref(rows)[1]


@settings(max_examples=50)
@given(st.integers(0, 10**6))
def test_group_algebra_associative(seed):
    rng = random.Random(seed)
    a, b, c = (so.random_group_elem(3, rng) for _ in range(3))
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


def test_sign_homomorphism():
    perms = list(permutations(range(4)))
    for a in perms[::5]:
        for b in perms[::7]:
            assert so.perm_sign(so.compose(a, b)) == so.perm_sign(a) * so.perm_sign(b)


def test_json_round_trip():
    x = so.symmetrizer("+-") * so.antisymmetrizer("+-") * so.GroupAlgElem(3, {(1, 2, 0): "1/3"})
    assert so.GroupAlgElem.from_json(json.loads(json.dumps(x.to_json()))) == x
    with pytest.raises(ValueError):
        so.GroupAlgElem(3, {(0, 0, 1): 1})
