import os
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from hallshuffle.arith import LaurentPoly, RatFunc

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def pytest_addoption(parser):
    parser.addoption("--long", action="store_true", help="run the slow checks")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--long") or os.environ.get("HALLSHUFFLE_LONG"):
        return
    skip = pytest.mark.skip(reason="needs --long or HALLSHUFFLE_LONG=1")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip)


VARS = ("q1", "q2", "z1")

coeffs = st.builds(
    Fraction, st.integers(-5, 5), st.integers(1, 4)
)


def exps(nvars, span=2):
    return st.tuples(*[st.integers(-span, span)] * nvars)


def polys(vars=VARS, max_terms=4, span=2):
    return st.dictionaries(exps(len(vars), span), coeffs, max_size=max_terms).map(
        lambda t: LaurentPoly(vars, t)
    )


def nonzero_polys(vars=VARS, max_terms=4):
    return polys(vars, max_terms).filter(lambda p: not p.is_zero())


def binomial_keys(nvars):
    return exps(nvars, 1).filter(any)


def ratfuncs(vars=VARS):
    def build(args):
        p, dens = args
        f = RatFunc.from_poly(p)
        for e in dens:
            f = f / RatFunc.binomial(vars, e)
        return f

    return st.tuples(polys(vars), st.lists(binomial_keys(len(vars)), max_size=2)).map(build)


def points(vars=VARS):
    """Rational points away from 0 and 1."""
    val = st.builds(Fraction, st.integers(2, 40), st.integers(2, 41)).filter(lambda x: x != 1)
    return st.tuples(*[val] * len(vars)).map(lambda xs: dict(zip(vars, xs)))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
