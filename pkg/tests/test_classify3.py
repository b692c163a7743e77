import math

import numpy as np
import pytest

from entrank.classify3 import (CASE_RANK, classify3, decompose3, normal_form3, real_rank3,
                               slice_polynomial)
from entrank.invariants import hyperdet
from entrank.linalg import matrix_rank
from entrank.tensor import TensorError, basis_tensor, frobenius_distance, from_array, pure, zeros

from conftest import cgauss, random_pure, random_rational, random_tensor, sum_of_pure

GHZ = basis_tensor("000") + basis_tensor("111")
W = basis_tensor("001") + basis_tensor("010") + basis_tensor("100")
RANK3 = basis_tensor("000") + basis_tensor("110") + basis_tensor("101")
RVC = basis_tensor("000") - basis_tensor("011") + basis_tensor("101") + basis_tensor("110")


def biseparable(rng, axis):
    """v ⊗ M with M a generic 2x2 matrix on the other two axes (0-based ``axis``)."""
    v = cgauss(rng, 2)
    m = cgauss(rng, (2, 2))
    arr = np.moveaxis(np.multiply.outer(v, m), 0, axis)
    return from_array(arr)


def check_decomposition(t, c):
    d = decompose3(t, c)
    assert len(d) == c.rank
    assert frobenius_distance(d.reconstruct(), t.to_approx()) < 1e-8 * t.norm()
    return d


def test_landmarks():
    c = classify3(GHZ)
    assert (c.case, c.rank, c.hyperdet) == ("Rank2Generic", 2, 1)
    assert c.roots.tag == "TwoDistinct"
    c = classify3(RANK3)
    assert (c.case, c.rank, c.deltas) == ("Rank3Degenerate", 3, (2, 2, 2))
    c = classify3(W)
    assert (c.case, c.rank) == ("Rank3Degenerate", 3)
    y1 = pure([[1, 0], [1, 0], [1, 0]]) + pure([[1, 0], [0, 1], [0, 1]])
    c = classify3(y1)
    assert (c.case, c.rank, c.axis) == ("Biseparable", 2, 1)


def test_pure_and_zero(rng):
    c = classify3(random_pure(rng))
    assert (c.case, c.rank) == ("Pure", 1)
    assert len(decompose3(random_pure(rng))) == 1
    with pytest.raises(TensorError):
        classify3(zeros((2, 2, 2)))
    with pytest.raises(TensorError):
        classify3(random_tensor(rng, 4))


@pytest.mark.parametrize("axis", [0, 1, 2])
def test_biseparable_axes(rng, axis):
    t = biseparable(rng, axis)
    c = classify3(t)
    assert c.case == "Biseparable" and c.axis == axis + 1
    assert sorted(c.deltas) == [1, 2, 2]
    check_decomposition(t, c)


def test_case_invariants(rng):
    samples = [random_tensor(rng) for _ in range(30)] + [sum_of_pure(rng, 3, 2) for _ in range(10)]
    samples += [W, RANK3, GHZ, RVC] + [biseparable(rng, a) for a in range(3)]
    for t in samples:
        c = classify3(t)
        assert c.rank == CASE_RANK[c.case]
        if c.case == "Rank2Generic":
            assert abs(complex(c.hyperdet)) > 0
        if c.case == "Rank3Degenerate":
            assert complex(c.hyperdet) == 0 and c.deltas == (2, 2, 2)
        if c.case == "Biseparable":
            assert sorted(c.deltas) == [1, 2, 2]
        check_decomposition(t, c)


def test_hyperdet_is_discriminant(rng):
    for _ in range(20):
        t = random_rational(rng)
        assert hyperdet(t) == slice_polynomial(t).discriminant()


def test_exact_and_approx_agree(rng):
    for t in [GHZ, W, RANK3, RVC] + [random_rational(rng) for _ in range(10)]:
        assert classify3(t).case == classify3(t.to_approx()).case


def test_decompose_ghz_terms():
    d = decompose3(GHZ)
    got = sorted(tuple(int(round(abs(x))) for x in fs[0]) for _, fs in d.terms)
    assert got == [(0, 1), (1, 0)]
    assert frobenius_distance(d.reconstruct(), GHZ.to_approx()) < 1e-12


def test_factors_span_range(rng):
    # the slice matrices of t lie in the span of the rank-one matrices f2 ⊗ f3 of the terms
    for t in [random_tensor(rng) for _ in range(10)] + [W, RANK3, GHZ]:
        d = decompose3(t)
        terms = np.array([np.multiply.outer(fs[1], fs[2]).ravel() for _, fs in d.terms])
        slices = t.complex_array().reshape(2, 4)
        assert matrix_rank(np.vstack([terms, slices])) == matrix_rank(terms) == len(d)


def test_normal_form_ghz():
    nf = normal_form3(GHZ.to_approx() * (1 / math.sqrt(2)))
    assert nf.case == "Rank2Generic"
    assert math.isclose(nf.params["lam"], 1 / math.sqrt(2), rel_tol=1e-12)
    assert abs(nf.params["z"] - 1 / math.sqrt(2)) < 1e-12
    for k in ("theta1", "theta2", "theta3"):
        assert math.isclose(nf.params[k], math.pi / 2, rel_tol=1e-12)
    assert nf.boundary
    assert abs(nf.constraint() - 1) < 1e-12


def test_normal_form_biseparable():
    th = 0.3
    t = (pure([[1, 0], [1, 0], [1, 0]], exact=False) * math.cos(th)
         + pure([[1, 0], [0, 1], [0, 1]], exact=False) * math.sin(th))
    nf = normal_form3(t)
    assert nf.case == "Biseparable" and math.isclose(nf.params["theta"], th, rel_tol=1e-12)


def test_normal_form_pure(rng):
    p = random_pure(rng)
    nf = normal_form3(p)
    assert nf.case == "Pure" and nf.params == {}
    assert frobenius_distance(nf.form(), basis_tensor("000").to_approx()) < 1e-12
    assert frobenius_distance(nf.reconstruct(), p * (1 / p.norm())) < 1e-12


def test_normal_form_reconstruction(rng):
    samples = [random_tensor(rng) for _ in range(200)] + [W, RANK3, RVC]
    samples += [biseparable(rng, a) for a in range(3)]
    for t in samples:
        nf = normal_form3(t)
        unit = t.to_approx() * (1 / t.norm())
        assert frobenius_distance(nf.reconstruct(), unit) < 1e-8
        if nf.case == "Rank2Generic":
            assert abs(nf.constraint() - 1) < 1e-9


def test_real_rank():
    assert classify3(RVC).rank == 2
    assert real_rank3(RVC) == 3
    assert real_rank3(GHZ) == 2
    assert real_rank3(pure([[1, 2], [3, -1], [1, 1]])) == 1
    d = decompose3(RVC)
    assert any(np.abs(np.imag(np.asarray(f, complex))).max() > 1e-6
               for _, fs in d.terms for f in fs)
