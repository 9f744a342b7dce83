import random
from fractions import Fraction

import pytest

from jetdiff.algebra import DiffPoly, jet_var, param_var
from jetdiff.series import TruncSeries

ACCEPTANCE_LINES = []


def rand_rat(rng, lo=-5, hi=5):
    return Fraction(rng.randint(lo, hi), rng.randint(1, 4))


def rand_poly(rng, n=2, max_order=3, terms=4, params=False, max_exp=2):
    vars_ = [jet_var(i, j) for i in range(1, n + 1) for j in range(max_order + 1)]
    if params:
        vars_ += [param_var("a", 1), param_var("a", 2), param_var("c", 1, 2), param_var("t")]
    out = {}
    for _ in range(terms):
        picks = rng.sample(vars_, rng.randint(0, 3))
        mono = tuple(sorted((v, rng.randint(1, max_exp)) for v in picks))
        out[mono] = rand_rat(rng)
    return DiffPoly(out)


def rand_series_poly(rng, degree):
    return TruncSeries.poly([rand_rat(rng) for _ in range(degree + 1)])


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
