import json
from fractions import Fraction

import pytest

from hallshuffle.arith import RatFunc
from hallshuffle.errors import InvariantViolation, NotInSpan
from hallshuffle.pbw import (
    QVARS,
    column_rank,
    enumerate_pbw,
    expansion_to_json,
    express,
    ordered_expansion,
    pbw_product,
    reconstruct,
)
from hallshuffle.shuffle import ShuffleElement, gen_H, gen_Hprime, gen_R, gen_Sbar


def test_enumeration_examples():
    assert enumerate_pbw(2, 0, (-1, 1)) == [((-1, 1), (1, 1)), ((0, 1), (0, 1)), ((0, 2),)]
    assert len(enumerate_pbw(2, 1, (0, 1))) == 2
    assert len(enumerate_pbw(3, 0, (-1, 1))) == 6
    assert enumerate_pbw(1, 4) == [((4, 1),)]
    with pytest.raises(ValueError):
        enumerate_pbw(2, 0)
    with pytest.raises(ValueError):
        enumerate_pbw(2, 0, (1, 0))


@pytest.mark.parametrize("n,m,window", [(2, 0, (-2, 2)), (3, 1, (-1, 1)), (3, 0, (0, Fraction(1, 2)))])
def test_enumeration_is_slope_ordered(n, m, window):
    for I in enumerate_pbw(n, m, window):
        assert sum(p[1] for p in I) == n and sum(p[0] for p in I) == m
        slopes = [Fraction(a, b) for a, b in I]
        assert slopes == sorted(slopes)
        assert all(window[0] <= s <= window[1] for s in slopes)


def test_generator_convention():
    assert pbw_product(((0, 2),)) == gen_Sbar((0, 1, 2))
    assert pbw_product(((1, 1), (2, 1))) == gen_Sbar((1, 1, 1)) * gen_Sbar((2, 1, 1))


@pytest.mark.parametrize("n,m,window", [(2, 0, (-1, 1)), (2, 1, (0, 1)), (3, 0, (-1, 1))])
def test_full_column_rank(n, m, window):
    idx = enumerate_pbw(n, m, window)
    assert column_rank(idx) == len(idx)


def coeff_strings(coeffs):
    return {I: str(c) for I, c in ordered_expansion(coeffs)}


def test_expansion_examples():
    assert coeff_strings(express(gen_H(0, 2), (0, 0))) == {((0, 1), (0, 1)): "1", ((0, 2),): "-(1 + q1)"}
    assert coeff_strings(express(gen_H(0, 3), (0, 0))) == {
        ((0, 1), (0, 1), (0, 1)): "1",
        ((0, 1), (0, 2)): "-(2 + q1)",
        ((0, 3),): "(1 + q1 + q1^2)",
    }
    assert coeff_strings(express(gen_Hprime(1, 2), (0, 1))) == {((1, 2),): "q2"}
    assert coeff_strings(express(gen_R((1, 0)), (0, 1))) == {
        ((0, 1), (1, 1)): "(1 - q1)",
        ((1, 2),): "-(1 - q1 - q2)",
    }


def test_laurent_coefficients():
    coeffs = express(gen_R((2, -1)), (-1, 2))
    assert reconstruct(coeffs, 2) == gen_R((2, -1))
    assert all(c.is_laurent() for c in coeffs.values())
    assert any(min(e[0] for e in c.numerator_poly().terms) < 0 for c in coeffs.values())


@pytest.mark.parametrize("m,n", [(0, 1), (1, 1), (-1, 1), (0, 2), (1, 2), (-1, 2)])
def test_h_integral(m, n):
    s = Fraction(m, n)
    coeffs = express(gen_H(m, n), (s.__floor__(), s.__ceil__()), assert_integral=True)
    assert reconstruct(coeffs, n) == gen_H(m, n)


def test_not_in_span():
    # slope 1/2 is invisible to a slope-0 window
    with pytest.raises(NotInSpan):
        express(gen_H(1, 2), (0, 0))
    with pytest.raises(NotInSpan):
        express(gen_H(1, 2), (1, 1))


def test_non_integral_detected():
    target = gen_Sbar((0, 1, 2)).scale(RatFunc.const(("q1", "q2"), Fraction(1, 2)))
    assert express(target, (0, 0)) == {((0, 2),): RatFunc.const(("q1", "q2"), Fraction(1, 2))}
    with pytest.raises(InvariantViolation):
        express(target, (0, 0), assert_integral=True)


def test_zero_and_inhomogeneous():
    assert express(ShuffleElement.zero(2), (0, 0)) == {}
    with pytest.raises(ValueError):
        express(gen_H(0, 2) + gen_H(1, 2), (0, 1))


def test_json_report():
    target = gen_H(0, 2)
    coeffs = express(target, (0, 0))
    out = json.loads(json.dumps(expansion_to_json(target, (0, 0), coeffs)))
    assert out["window"] == ["0", "0"]
    assert [c["index"] for c in out["coeffs"]] == [[["0", "1"], ["0", "1"]], [["0", "2"]]]
    assert RatFunc.from_json(out["coeffs"][1]["coeff"]) == coeffs[((0, 2),)]
