import json
import random
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hallshuffle import oracle
from hallshuffle.arith import LaurentPoly, Monomial, RatFunc
from hallshuffle.errors import CoprimalityError, InvariantViolation, PoleError
from hallshuffle.shuffle import (
    ShuffleElement,
    eccentric_pushforward,
    flag_pushforward,
    flag_vars,
    gen_H,
    gen_Hprime,
    gen_Pbar,
    gen_R,
    gen_ribbon,
    gen_Sbar,
    mat_substack_class,
    shuffle_mul,
    shuffle_vars,
    symmetrize,
    zeta,
)

GOLDEN = Path(__file__).parent / "golden"
QV = ("q1", "q2")


def qpoly(**terms):
    return RatFunc.from_poly(LaurentPoly(QV, {k: v for k, v in terms.items()}))


def q(name):
    return RatFunc.var(QV, name)


def one_minus(x):
    return 1 - x


def point(N, seed):
    return oracle.random_point(N, random.Random(seed))


def agrees(el, fn, N, seeds=(1, 2, 3)):
    for s in seeds:
        q1, q2, z = point(N, s)
        assert el.evaluate(oracle.point_dict(q1, q2, z)) == fn(q1, q2, z)


# -- zeta and symmetrize -------------------------------------------------


def test_zeta_formula_and_pole():
    V = shuffle_vars(2)
    x = Monomial.from_dict(V, {"z1": 1, "z2": -1})
    f = zeta(x)
    pt = {"q1": Fraction(2), "q2": Fraction(3), "z1": Fraction(5), "z2": Fraction(7)}
    assert f.evaluate(pt) == oracle.zeta(Fraction(5, 7), 2, 3)
    y = Monomial.from_dict(V, {"z2": 1, "z1": -1})
    assert (f * zeta(y)).evaluate(pt) == oracle.zeta(Fraction(5, 7), 2, 3) * oracle.zeta(Fraction(7, 5), 2, 3)
    assert (f * RatFunc.binomial(V, x.exps)).is_laurent()
    with pytest.raises(PoleError):
        zeta(Monomial.one(V))


def test_symmetrize_examples():
    V = shuffle_vars(2)
    f = RatFunc.one(V) / RatFunc.binomial(V, (0, 0, -1, 1))
    assert symmetrize(f, 2) == ShuffleElement(2, 1)
    g = RatFunc.var(V, "z1") * RatFunc.var(V, "z2") + 1
    assert symmetrize(g, 2) == ShuffleElement(2, g * 2)
    h = RatFunc.var(shuffle_vars(1), "z1") * q("q1").extend(shuffle_vars(1))
    assert symmetrize(h, 1) == ShuffleElement(1, h)


def test_symmetrize_rejects_uncleared():
    V = shuffle_vars(2)
    f = RatFunc.one(V) / RatFunc.binomial(V, (0, 0, 2, -1))
    with pytest.raises((InvariantViolation, ValueError)):
        symmetrize(f, 2)


def test_shuffle_unit_and_square():
    s01 = gen_Sbar((0, 1, 1))
    assert s01 == ShuffleElement(1, 1 - q("q2"))
    assert shuffle_mul(ShuffleElement.unit(), s01) == s01
    V = shuffle_vars(2)
    kernel = zeta(Monomial.from_dict(V, {"z1": 1, "z2": -1}))
    expected = symmetrize(kernel, 2).scale((1 - q("q2")) ** 2)
    assert s01 * s01 == expected


def test_associativity_witness():
    h = gen_H(0, 1)
    assert (h * h) * h == h * (h * h)


@settings(max_examples=30)
@given(st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2))
def test_products_symmetric_and_associative(a, b, c):
    x, y, z = gen_H(a, 1), gen_H(b, 1), gen_H(c, 1)
    xy = x * y
    assert xy.is_symmetric()
    assert (xy * z) == x * (y * z)
    # bilinearity
    assert x * (y + z) == xy + x * z


def test_product_against_oracle():
    a, b = gen_H(1, 2), gen_H(0, 1)
    fa = lambda q1, q2, zs: oracle.H(1, 2, q1, q2, zs)
    fb = lambda q1, q2, zs: oracle.H(0, 1, q1, q2, zs)
    agrees(a * b, lambda q1, q2, z: oracle.shuffle(fa, 2, fb, 1, q1, q2, z), 3)


# -- generators --------------------------------------------------------------


def test_small_generators():
    assert gen_H(0, 1) == ShuffleElement(1, 1 - q("q2"))
    z1 = RatFunc.var(shuffle_vars(1), "z1")
    for m in (-2, 0, 3):
        assert gen_H(m, 1) == ShuffleElement(1, (1 - q("q2").extend(shuffle_vars(1))) * z1**m)
        assert gen_R((m,)) == gen_H(m, 1)
    assert gen_Hprime(0, 1) == ShuffleElement(1, 1 - q("q2"))
    assert gen_Pbar((0, 1, 1)) == gen_Sbar((0, 1, 1))
    assert gen_R((0, 1)) == gen_H(1, 2)
    # empty sign sequence: the ribbon prefactor carries one more (1 - q1)
    assert gen_ribbon(1, 2, "") == gen_Sbar((1, 2, 1)).scale(1 - q("q1"))
    assert mat_substack_class(1) == ShuffleElement(1, 1 - q("q2"))
    assert eccentric_pushforward(0, 1) == ShuffleElement(1, 1 - q("q2"))


def test_sbar_0_1_2_closed_form():
    V = shuffle_vars(2)
    q1, q2 = RatFunc.var(V, "q1"), RatFunc.var(V, "q2")
    z1, z2 = RatFunc.var(V, "z1"), RatFunc.var(V, "z2")
    closed = q1 * (1 - q2) ** 2 * (1 - q2 * z1 / z2) * (1 - q2 * z2 / z1)
    assert gen_Sbar((0, 1, 2)) == ShuffleElement(2, closed)
    assert mat_substack_class(2) == ShuffleElement(2, closed / q1)


def test_coprimality_errors():
    for bad in (lambda: gen_Sbar((2, 4, 1)), lambda: gen_Pbar((0, 2, 1)), lambda: gen_ribbon(2, 2, "+")):
        with pytest.raises(CoprimalityError):
            bad()


def test_generators_integral_and_symmetric():
    for el in (gen_H(2, 3), gen_Hprime(-1, 3), gen_Sbar((1, 2, 2)), gen_Pbar((1, 1, 3)), gen_ribbon(1, 1, "+-")):
        assert el.is_integral()
        assert el.is_symmetric()


def test_newton_identity_degree_two():
    s1, s2, p2 = gen_Sbar((1, 1, 1)), gen_Sbar((1, 1, 2)), gen_Pbar((1, 1, 2))
    assert s2 == (s1 * s1 - p2) / 2


def test_e_to_ribbon_image():
    q1 = q("q1")
    lhs = (gen_ribbon(1, 1, "+").scale(q1) + gen_ribbon(1, 1, "-")).scale(
        RatFunc.one(QV) / ((1 - q1) * (1 - q1**2))
    )
    assert lhs == gen_Sbar((1, 1, 2))


def test_flag_pushforward_examples():
    L = flag_vars(2)
    assert flag_pushforward(LaurentPoly.one(L), 2) == ShuffleElement(2, 1)
    V = shuffle_vars(2)
    z_sum = RatFunc.var(V, "z1") + RatFunc.var(V, "z2")
    assert flag_pushforward(LaurentPoly.var(L, "L2"), 2) == ShuffleElement(2, z_sum)
    assert flag_pushforward(LaurentPoly.var(L, "L1"), 2).is_zero()
    R1 = RatFunc.var(flag_vars(1), "L1") * 3
    assert flag_pushforward(R1, 1) == ShuffleElement(1, RatFunc.var(shuffle_vars(1), "z1") * 3)


@pytest.mark.parametrize("m,n", [(1, 2), (1, 3), (-1, 2), (2, 3)])
def test_eccentric_equals_hprime(m, n):
    assert eccentric_pushforward(m, n) == gen_Hprime(m, n)


def test_hprime_is_q2_power_times_h():
    # the relation holds with the power on this side
    for m, n in [(1, 2), (1, 3), (2, 3), (3, 4), (-1, 2)]:
        assert gen_Hprime(m, n) == gen_H(m, n).scale(q("q2") ** (n - 1))


@pytest.mark.parametrize(
    "name,build,fn,N",
    [
        ("H(2,3)", lambda: gen_H(2, 3), lambda a, b, z: oracle.H(2, 3, a, b, z), 3),
        ("H'(2,3)", lambda: gen_Hprime(2, 3), lambda a, b, z: oracle.H(2, 3, a, b, z, True), 3),
        ("Sbar(1,1,3)", lambda: gen_Sbar((1, 1, 3)), lambda a, b, z: oracle.Sbar(1, 1, 3, a, b, z), 3),
        ("SbarB(1,1,3)", lambda: gen_Sbar((1, 1, 3), "B"), lambda a, b, z: oracle.Sbar(1, 1, 3, a, b, z, "B"), 3),
        ("Pbar(0,1,3)", lambda: gen_Pbar((0, 1, 3)), lambda a, b, z: oracle.Pbar(0, 1, 3, a, b, z), 3),
        ("ribbon(1,1,+-)", lambda: gen_ribbon(1, 1, "+-"), lambda a, b, z: oracle.ribbon(1, 1, "+-", a, b, z), 3),
        ("R(2,0,-1)", lambda: gen_R((2, 0, -1)), lambda a, b, z: oracle.R((2, 0, -1), a, b, z), 3),
        ("ecc(2,3)", lambda: eccentric_pushforward(2, 3), lambda a, b, z: oracle.eccentric(2, 3, a, b, z), 3),
    ],
)
def test_generators_against_oracle(name, build, fn, N):
    agrees(build(), fn, N)


@pytest.mark.parametrize("name", sorted(p.stem for p in GOLDEN.glob("*.json") if not p.stem.startswith("cli_")))
def test_golden(name):
    builders = {
        "H_1_2": lambda: gen_H(1, 2),
        "Hprime_1_2": lambda: gen_Hprime(1, 2),
        "Pbar_1_1_2": lambda: gen_Pbar((1, 1, 2)),
        "R_0_1": lambda: gen_R((0, 1)),
        "ribbon_0_1_plus": lambda: gen_ribbon(0, 1, "+"),
        "flag_L1": lambda: flag_pushforward(LaurentPoly.var(flag_vars(2), "L1"), 2),
    }
    stored = ShuffleElement.from_json(json.loads((GOLDEN / f"{name}.json").read_text()))
    assert builders[name]() == stored


def test_golden_values_independently():
    stored = ShuffleElement.from_json(json.loads((GOLDEN / "Pbar_1_1_2.json").read_text()))
    agrees(stored, lambda a, b, z: oracle.Pbar(1, 1, 2, a, b, z), 2)
    stored = ShuffleElement.from_json(json.loads((GOLDEN / "H_1_2.json").read_text()))
    agrees(stored, lambda a, b, z: oracle.H(1, 2, a, b, z), 2)


def test_element_json_roundtrip():
    el = gen_Sbar((1, 2, 2))
    back = ShuffleElement.from_json(json.loads(json.dumps(el.to_json())))
    assert back == el
    assert back.to_json() == el.to_json()


def test_z_in_denominator_rejected():
    V = shuffle_vars(2)
    with pytest.raises(ValueError):
        ShuffleElement(2, RatFunc.one(V) / RatFunc.binomial(V, (0, 0, 1, -1)))
