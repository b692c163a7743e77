import math

import numpy as np
import pytest

from entrank.linalg import (HomPoly, chordal_distance, cluster_points, determinant, double_root,
                            hom_roots, matrix_rank, normalize_point, nullspace, schmidt)
from entrank.qubit4 import _gl_action_matrix, _stabilizer_point
from entrank.scalars import GaussianRational, exact_array
from entrank.tensor import basis_tensor, matricize, pure

from conftest import cgauss

GHZ = basis_tensor("000") + basis_tensor("111")


def test_matrix_rank_examples(rng):
    assert matrix_rank(matricize(GHZ, [0])) == 2
    assert matrix_rank(exact_array(np.eye(4, dtype=int))) == 4
    assert matrix_rank(np.eye(4)) == 4
    p = pure([cgauss(rng, 2) for _ in range(4)], exact=False)
    for rows in ([0], [1, 2], [0, 3], [1, 2, 3]):
        assert matrix_rank(matricize(p, rows)) == 1


def test_exact_rank_and_det_match_float(rng):
    for _ in range(30):
        m = rng.integers(-3, 4, (4, 5))
        m[3] = m[0] - 2 * m[1]
        assert matrix_rank(exact_array(m.ravel()).reshape(4, 5)) == np.linalg.matrix_rank(m)
        sq = rng.integers(-5, 6, (4, 4))
        d = determinant(exact_array(sq.ravel()).reshape(4, 4))
        assert isinstance(d, GaussianRational)
        assert math.isclose(float(d.re), np.linalg.det(sq), abs_tol=1e-9)


def test_exact_rank_complex():
    i = GaussianRational(0, 1)
    m = exact_array([1, i, i, -1]).reshape(2, 2)
    assert matrix_rank(m) == 1
    assert determinant(m) == 0


def test_schmidt(rng):
    u, s, vh = schmidt(np.diag([1.0, 0.0]))
    np.testing.assert_allclose(s, [1, 0])
    u, s, vh = schmidt(np.eye(2) / math.sqrt(2))
    np.testing.assert_allclose(s, [1 / math.sqrt(2)] * 2)
    m = cgauss(rng, (4, 3))
    u, s, vh = schmidt(m)
    assert np.linalg.norm(u @ np.diag(s) @ vh - m) < 1e-12


def test_nullspace():
    assert nullspace(np.eye(3)) == []
    assert nullspace(exact_array(np.eye(3, dtype=int).ravel()).reshape(3, 3)) == []
    assert len(nullspace(np.zeros((14, 16)))) == 16
    zero = exact_array([0] * (14 * 16)).reshape(14, 16)
    assert len(nullspace(zero)) == 16


def test_nullspace_vectors_annihilate(rng):
    m = rng.integers(-2, 3, (3, 6))
    ex = exact_array(m.ravel()).reshape(3, 6)
    basis = nullspace(ex)
    assert len(basis) == 6 - np.linalg.matrix_rank(m)
    for v in basis:
        assert all(x == 0 for x in ex.dot(v))


def test_stabilizer_kernel():
    a = _gl_action_matrix(_stabilizer_point(GaussianRational(1), GaussianRational(1), True))
    assert len(nullspace(a)) == 4


def test_hom_roots_examples():
    r = hom_roots(HomPoly((0, 1, 0)))
    assert r.tag == "TwoDistinct"
    pts = {tuple(complex(c) for c in p) for p in r.points()}
    assert pts == {(1, 0), (0, 1)}
    r = hom_roots(HomPoly((1, 0, 0)))
    assert r.tag == "OneDouble"
    assert chordal_distance(r.points()[0], (0, 1)) < 1e-12
    assert hom_roots(HomPoly((0, 0, 0))).tag == "IdenticallyZero"


def test_hom_roots_exact_double_root():
    # (x - 2y)^2 = x^2 - 4xy + 4y^2
    p = HomPoly(tuple(GaussianRational(c) for c in (1, -4, 4)))
    r = hom_roots(p)
    assert r.tag == "OneDouble"
    assert chordal_distance(double_root(p), (2, 1)) == 0


def test_hom_roots_quartic(rng):
    roots = [(1, 0), (0.5 + 1j, 1), (-2, 1), (3j, 1)]
    poly = np.poly1d([1])
    for x, y in roots[1:]:
        poly = poly * np.poly1d([1, -x])
    # y * prod(x - r y): the root (1:0) makes the x^4 coefficient vanish
    coeffs = (0,) + tuple(poly.coeffs)
    r = hom_roots(HomPoly(coeffs))
    assert len(r.points()) == 4
    for p in roots:
        assert min(chordal_distance(p, q) for q in r.points()) < 1e-8


def test_points():
    assert normalize_point(0, 3) == (0, 1)
    assert normalize_point(2, 4) == (1, 2)
    assert chordal_distance((1, 2), (2, 4)) < 1e-15
    assert len(cluster_points([(1, 0), (1, 1e-9), (0, 1)])) == 2


def test_bad_degree():
    with pytest.raises(ValueError):
        hom_roots(HomPoly((1, 2, 3, 4)))
