import numpy as np
import pytest
from fractions import Fraction

from entrank.scalars import GaussianRational
from entrank.tensor import from_array, pure, tensor_new


def cgauss(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_tensor(rng, order=3):
    return from_array(cgauss(rng, (2,) * order))


def random_rational(rng, order=3, lo=-5, hi=6, complex_=True):
    n = 2 ** order
    re = rng.integers(lo, hi, n)
    im = rng.integers(lo, hi, n) if complex_ else np.zeros(n, int)
    entries = [GaussianRational(Fraction(int(a), int(d)), Fraction(int(b), 1))
               for a, b, d in zip(re, im, rng.integers(1, 4, n))]
    return tensor_new((2,) * order, entries)


def random_pure(rng, order=3):
    return pure([cgauss(rng, 2) for _ in range(order)], exact=False)


def sum_of_pure(rng, order, k):
    t = random_pure(rng, order)
    for _ in range(k - 1):
        t = t + random_pure(rng, order)
    return t


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])
