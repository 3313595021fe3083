from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hallshuffle import symfunc as sf
from hallshuffle.arith import RatFunc
from hallshuffle.errors import CoprimalityError
from hallshuffle.shuffle import gen_H, gen_Pbar, gen_ribbon, gen_Sbar

QV = sf.QVARS
q1 = RatFunc.var(QV, "q1")
half = Fraction(1, 2)


def signs(max_len):
    for k in range(max_len + 1):
        yield from ("".join(s) for s in product("+-", repeat=k))


def test_partitions_and_z():
    assert sf.partitions(4) == ((4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1))
    assert sf.z_coeff((2, 1, 1)) == 4
    assert sf.z_coeff((3,)) == 3


def test_elementary_and_complete_degree_two():
    p1, p2 = sf.pbar(1), sf.pbar(2)
    assert sf.ebar(2) == (p1 * p1 - p2) * half
    assert sf.hbar(2) == (p1 * p1 + p2) * half
    # modified h_2 against the n=2 formula (1-q)p1^2/2 + (1+q)p2/2 up to plethysm
    expected = ((1 - q1) ** 2 * p1 * p1 + (1 - q1**2) * p2) * half
    assert sf.h(2) == expected


def test_newton_identities():
    def e(k):
        return sf.ebar(k) if k else sf.SymFuncExpr.scalar(1)

    for d in range(1, 5):
        acc = sf.SymFuncExpr.zero()
        for k in range(1, d + 1):
            acc = acc + e(d - k) * sf.pbar(k) * (-1) ** (k - 1)
        assert acc == sf.ebar(d) * d


def test_plethysm_round_trip():
    f = sf.sbar((2, 1)) + sf.ebar(3) * q1
    g = sf.plethysm_q(f, "bar-to-modified")
    assert g.flag == "modified"
    assert sf.plethysm_q(g, "modified-to-bar") == f
    with pytest.raises(ValueError):
        sf.plethysm_q(f, "sideways")


def test_example_n2_identities():
    p1, p2 = sf.pbar(1), sf.pbar(2)
    assert sf.ribbon("+", "barred") == (p1 * p1 + p2) * half
    assert sf.ribbon("-", "barred") == (p1 * p1 - p2) * half
    assert sf.ribbon("+", "modified") / (1 - q1) == sf.hbar(2) - sf.ebar(2) * q1
    assert sf.ribbon("-", "modified") / (1 - q1) == sf.ebar(2) - sf.hbar(2) * q1


def test_ribbon_composition():
    assert sf.ribbon_composition("+-+") == (2, 2)
    assert sf.ribbon_composition("") == (1,)
    assert sf.composition_signs((2, 2)) == ("+", "-", "+")


@pytest.mark.parametrize("kind", ["barred", "modified"])
def test_ribbon_product_rule(kind):
    for a in signs(2):
        for b in signs(2):
            if len(a) + len(b) + 2 <= 4:
                lhs = sf.ribbon(a, kind) * sf.ribbon(b, kind)
                assert lhs == sf.ribbon(a + "+" + b, kind) + sf.ribbon(a + "-" + b, kind)


def test_ribbon_two_routes():
    for eps in signs(4):
        assert sf.ribbon(eps) == sf.ribbon_by_recursion(eps)


def test_h_and_e_as_ribbons():
    for d in range(1, 5):
        assert sf.h(d) == sf.ribbon("+" * (d - 1), "modified")
        assert sf.hbar(d) == sf.ribbon("+" * (d - 1), "barred")
        assert sf.ebar(d) == sf.ribbon("-" * (d - 1), "barred")
    for d in range(1, 4):
        assert sf.e_to_ribbon(d) == sf.ebar(d)


def test_hooks_are_schur():
    assert sf.ribbon("+-", "barred") == sf.sbar((2, 1))
    assert sf.ribbon("++-", "barred") == sf.sbar((3, 1))


@pytest.mark.parametrize("basis", sf.BASES)
def test_basis_round_trip(basis):
    f = sf.sbar((2, 1)) * q1 + sf.ebar(3) - sf.pbar(1) ** 3 * half + sf.hbar(2)
    coeffs = sf.basis_convert(f, basis)
    assert sf.from_basis(coeffs, basis) == f


def test_basis_convert_known():
    coeffs = sf.basis_convert(sf.hbar(2), "ebar")
    assert coeffs[(1, 1)] == 1 and coeffs[(2,)] == -1
    assert sf.basis_convert(sf.sbar((2, 1)), "sbar") == {(2, 1): RatFunc.one(QV)}
    with pytest.raises(ValueError):
        sf.basis_convert(sf.hbar(2), "monomial")


def test_frobenius_char_classical():
    assert sf.frobenius_char({(1, 1): 1, (2,): 1}) == sf.hbar(2)
    assert sf.frobenius_char({(1, 1): 1, (2,): -1}) == sf.ebar(2)
    assert sf.frobenius_char(lambda mu: 1, 3) == sf.hbar(3)
    assert sf.cycle_type((1, 2, 0, 3)) == (3, 1)


def test_expr_json_round_trip():
    f = sf.schur((2, 1)) * q1
    back = sf.SymFuncExpr.from_json(f.to_json())
    assert back == f and back.flag == f.flag


@pytest.mark.parametrize("m,n", [(0, 1), (1, 1)])
def test_phi_identities(m, n):
    for d in (1, 2):
        assert sf.phi_slope(m, n, sf.ebar(d)) == gen_Sbar((m, n, d))
        assert sf.phi_slope(m, n, sf.pbar(d)) == gen_Pbar((m, n, d))
        assert sf.phi_slope(m, n, sf.h(d)) == gen_H(m * d, n * d).scale(1 - q1)


def test_phi_ribbons():
    for eps in ("+", "-"):
        assert sf.phi_slope(1, 1, sf.ribbon(eps, "modified")) == gen_ribbon(1, 1, eps)
    assert sf.phi_slope(0, 1, sf.pbar(1)) == gen_Pbar((0, 1, 1))


def test_phi_slope_contract():
    with pytest.raises(CoprimalityError):
        sf.phi_slope(2, 2, sf.pbar(1))
    mixed = sf.pbar(1) + sf.pbar(2)
    with pytest.raises(ValueError):
        sf.phi_slope(0, 1, mixed)
    graded = sf.phi_slope_graded(0, 1, mixed)
    assert set(graded) == {1, 2}
    assert graded[2] == gen_Pbar((0, 1, 2))


small = st.sampled_from([sf.pbar(1), sf.ebar(2), sf.hbar(2), sf.pbar(1) * q1, sf.ribbon("-", "modified")])


@settings(max_examples=12)
@given(small, small, st.sampled_from([(0, 1), (1, 1)]))
def test_phi_multiplicative(f, g, slope):
    if sum(f.degrees()) + sum(g.degrees()) > 3:
        return
    m, n = slope
    assert sf.phi_slope(m, n, f * g) == sf.phi_slope(m, n, f) * sf.phi_slope(m, n, g)
