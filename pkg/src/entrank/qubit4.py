"""Four-qubit tensors: constructive decompositions with at most four terms,
rank certificates, closure tests for the rank-3 and rank-2 loci, and the
stabilizer dimension count behind the 13-dimensional rank-3 closure.

A 4-qubit tensor ``t`` is read as a pencil of 3-qubit slices
``T(x, y) = x t[0] + y t[1]``. The hyperdeterminant of the pencil,
``q(x, y) = D(x t[0] + y t[1])``, is a binary quartic. Two points where
``q != 0`` give two generic rank-2 slices and hence four terms; when
``q`` vanishes identically the pencil lies in the hypersurface ``D = 0``
and the slices are taken at points where the pencil meets a biseparable
locus instead.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .classify3 import _pair_terms, classify3, decompose3, rank1_factors
from .invariants import bipartite_rank, essential_deltas, hyperdet, is_pure_exchange, vanishes
from .linalg import (HomPoly, chordal_distance, cluster_points, hom_roots, matrix_rank,
                     nullspace)
from .oracle import als_fit, verify_decomposition
from .scalars import GaussianRational
from .tensor import Decomposition, Tensor, TensorError, from_array

# (1:0) and sixteen affine points (r:1); fixed so runs are reproducible
GRID = [(1, 0)] + [(r, 1) for r in (0, 1, -1, 1j, -1j, 2, -2, 2j, -2j, 1 + 1j, -1 - 1j,
                                    1 - 1j, -1 + 1j, 0.5, -0.5, 0.5j)]
ZERO_TOL = 1e-10
CERTIFY_TOL = 1e-8


def _check4(t: Tensor, nonzero: bool = True):
    if t.shape != (2, 2, 2, 2):
        raise TensorError(f"expected shape (2, 2, 2, 2), got {t.shape}")
    if nonzero and t.is_zero():
        raise TensorError("zero tensor")


def _slice3(arr: np.ndarray, p) -> Tensor:
    return from_array(np.tensordot(np.asarray(p, dtype=complex), arr, axes=([0], [0])))


def _extend(terms3, row: np.ndarray, axis: int = 0) -> list[tuple]:
    """Lift 3-qubit terms to 4-qubit terms with ``row`` on ``axis``."""
    n = np.linalg.norm(row)
    out = []
    for w, fs in terms3:
        fs = list(fs)
        fs.insert(axis, row / n)
        out.append((complex(w) * n, tuple(fs)))
    return out


def _pencil_decomposition(arr: np.ndarray, p1, p2) -> list[tuple]:
    terms = []
    for row, s in _pair_terms(arr, p1, p2):
        s_t = from_array(s)
        if s_t.norm() <= 1e-14 * np.linalg.norm(arr):
            continue
        terms += _extend(decompose3(s_t).terms, row)
    return terms


def pencil_quartic(t: Tensor) -> HomPoly:
    """Coefficients of ``q(x, y) = D(x t[0] + y t[1])`` by interpolation at 5 points."""
    arr = t.complex_array()
    xs = np.array([-2, -1, 0, 1, 2], dtype=float)
    vals = [hyperdet(_slice3(arr, (x, 1))) for x in xs]
    # q(x, 1) = sum_i c_i x^(4-i)
    coeffs = np.linalg.solve(np.vander(xs, 5), np.array(vals))
    return HomPoly(tuple(complex(c) for c in coeffs))


def _minor_quadratics(arr: np.ndarray, axis: int) -> list[HomPoly]:
    """2x2 minors of the axis-``axis`` flattening of ``x t[0] + y t[1]``."""
    a = np.moveaxis(arr[0], axis, 0).reshape(2, 4)
    b = np.moveaxis(arr[1], axis, 0).reshape(2, 4)
    polys = []
    for c1, c2 in itertools.combinations(range(4), 2):
        # det [[x a0c1 + y b0c1, x a0c2 + y b0c2], [x a1c1 + y b1c1, x a1c2 + y b1c2]]
        c0 = a[0, c1] * a[1, c2] - a[0, c2] * a[1, c1]
        c1_ = (a[0, c1] * b[1, c2] + b[0, c1] * a[1, c2]
               - a[0, c2] * b[1, c1] - b[0, c2] * a[1, c1])
        c2_ = b[0, c1] * b[1, c2] - b[0, c2] * b[1, c1]
        polys.append(HomPoly((complex(c0), complex(c1_), complex(c2_))))
    return polys


def _biseparable_points(arr: np.ndarray, scale2: float) -> tuple[list[tuple], list[int]]:
    """Points of the pencil lying in some biseparable locus Y_j.

    Returns ``(points, whole_line_axes)`` where the second list names the
    axes whose locus contains the entire pencil.
    """
    points, whole = [], []
    tol = ZERO_TOL * scale2
    for axis in range(3):
        polys = _minor_quadratics(arr, axis)
        live = [p for p in polys if max(abs(c) for c in p.coeffs) >= tol]
        if not live:
            whole.append(axis)
            continue
        cands = []
        for p in live:
            rs = hom_roots(p, abs_tol=tol, disc_tol=tol * scale2)
            cands += rs.points()
        for pt, _ in cluster_points(cands):
            v = np.array(pt, dtype=complex)
            v = v / np.linalg.norm(v)
            if all(abs(p(v[0], v[1])) < 1e-8 * scale2 for p in polys):
                points.append(tuple(v))
    return points, whole


def _most_separated(points: list[tuple]) -> tuple | None:
    best = None
    for p, q in itertools.combinations(points, 2):
        d = chordal_distance(p, q)
        if d > 1e-6 and (best is None or d > best[0]):
            best = (d, p, q)
    return None if best is None else best[1:]


def _main_pipeline(t: Tensor) -> tuple[list[tuple] | None, str]:
    arr = t.complex_array()
    nt = np.linalg.norm(arr)
    flat = arr.reshape(2, 8)
    if matrix_rank(flat) <= 1:
        u, s, vh = np.linalg.svd(flat)
        core = from_array((s[0] * vh[0]).reshape(2, 2, 2))
        return _extend(decompose3(core).terms, u[:, 0]), "single-slice"

    vals = []
    for p in GRID:
        v = np.array(p, dtype=complex)
        v = v / np.linalg.norm(v)
        vals.append((abs(hyperdet(_slice3(arr, v))), tuple(v)))
    if max(a for a, _ in vals) >= ZERO_TOL * nt ** 4:
        vals.sort(key=lambda item: -item[0])
        p1, p2 = vals[0][1], vals[1][1]
        return _pencil_decomposition(arr, p1, p2), "generic-pencil"

    points, whole = _biseparable_points(arr, nt ** 2)
    if whole:
        return _pencil_decomposition(arr, (1, 0), (0, 1)), "pencil-in-biseparable-locus"
    pair = _most_separated(points)
    if pair is not None:
        return _pencil_decomposition(arr, *pair), "pencil-meets-biseparable-loci"
    return None, "no-two-biseparable-points"


def _axis_shortcuts(t: Tensor) -> list[list[tuple]]:
    """Slice along each axis in the standard basis; cheap and often shorter."""
    arr = t.complex_array()
    nt = np.linalg.norm(arr)
    out = []
    for axis in range(4):
        terms = []
        for a in range(2):
            s = np.take(arr, a, axis=axis)
            if np.linalg.norm(s) <= 1e-14 * nt:
                continue
            row = np.zeros(2, dtype=complex)
            row[a] = 1
            terms += _extend(decompose3(from_array(s)).terms, row, axis)
        out.append(terms)
    return out


def _low_rank_pencils(t: Tensor) -> list[list[tuple]]:
    """Pencils along each axis sliced at biseparable points of lowest slice rank.

    A slice lying in every biseparable locus is pure, so a sum of two pure
    tensors splits into two pure slices here.
    """
    arr0 = t.complex_array()
    scale2 = float(np.linalg.norm(arr0)) ** 2
    out = []
    for axis in range(4):
        arr = np.moveaxis(arr0, axis, 0)
        points, whole = _biseparable_points(arr, scale2)
        if len(whole) == 3:
            # every slice is pure; any two points do
            points = [(1, 0), (0, 1)]
        ranked = []
        for p in points:
            s = _slice3(arr, p)
            if s.norm() > 1e-12 * scale2 ** 0.5:
                ranked.append((classify3(s).rank, p))
        best = None
        for (r1, p1), (r2, p2) in itertools.combinations(ranked, 2):
            if chordal_distance(p1, p2) > 1e-6 and (best is None or r1 + r2 < best[0]):
                best = (r1 + r2, p1, p2)
        if best is None:
            continue
        terms = _pencil_decomposition(arr, best[1], best[2])
        order = list(range(1, 4))
        order.insert(axis, 0)
        out.append([(w, tuple(fs[i] for i in order)) for w, fs in terms])
    return out


def decompose4(t: Tensor, fallback_restarts: int = 10, fallback_iters: int = 2000,
               seed: int = 0) -> Decomposition:
    """Decomposition of a nonzero 4-qubit tensor into at most four pure terms.

    Certified results come from explicit slice constructions and are checked
    to reconstruct ``t`` within 1e-8 relative. If no construction applies,
    an ALS fit with four terms is returned with ``certified=False``.
    """
    _check4(t)
    ta = t.to_approx()
    arr = ta.array
    pure, _ = is_pure_exchange(ta)
    if pure:
        w, fs = rank1_factors(arr)
        return Decomposition(((w, tuple(fs)),), certified=True)

    candidates = []
    main, _ = _main_pipeline(ta)
    if main is not None:
        candidates.append(main)
    candidates += _axis_shortcuts(ta)
    if in_s3_closure(ta) and min((len(c) for c in candidates), default=5) > 2:
        candidates += _low_rank_pencils(ta)
    good = []
    for terms in candidates:
        d = Decomposition(tuple(terms), certified=True)
        if len(d) <= 4 and verify_decomposition(ta, d, CERTIFY_TOL):
            good.append(d)
    if good:
        return min(good, key=len)
    rep = als_fit(ta, 4, restarts=fallback_restarts, max_iters=fallback_iters, seed=seed)
    return rep.decomposition


@dataclass(frozen=True)
class RankCertificate:
    """Rank bounds for a 4-qubit tensor.

    ``rank`` is the claimed value: the length of ``decomposition``. The bound
    is exact when ``lower == rank`` and the decomposition is certified.
    """

    rank: int
    lower: int
    lower_evidence: str
    decomposition: Decomposition
    exact: bool
    deltas: dict = field(default_factory=dict)
    note: str = ""

    @property
    def upper(self) -> int:
        return self.rank

    def to_json(self) -> dict:
        from .classify3 import _scalar_json
        return {"rank": self.rank, "lower": self.lower, "upper": self.upper,
                "lower_evidence": self.lower_evidence, "exact": self.exact,
                "certified": self.decomposition.certified,
                "deltas": {k: _scalar_json(v) for k, v in self.deltas.items()},
                "note": self.note}


def _deltas_vanish(t: Tensor, deltas: dict) -> bool:
    scale = 1.0 if t.exact else t.norm() ** 4
    return all(vanishes(v, scale, ZERO_TOL) for v in deltas.values())


PAIRINGS = ((0, 1), (0, 2), (0, 3))


def rank4(t: Tensor) -> RankCertificate:
    """Rank certificate for a nonzero 4-qubit tensor.

    Lower bounds: some ``delta != 0`` gives 4 (outside the closure of the
    rank-3 locus); otherwise a 4x4 flattening of rank 3 gives 3; otherwise
    non-purity gives 2. The upper bound is the length of
    :func:`decompose4`. Vanishing deltas only bound the border rank, so a
    lower bound of 3 without a matching 3-term decomposition stays a range.
    """
    _check4(t)
    deltas = essential_deltas(t)
    if not _deltas_vanish(t, deltas):
        lower, evidence = 4, "nonzero delta"
    elif max(bipartite_rank(t, pair) for pair in PAIRINGS) >= 3:
        lower, evidence = 3, "4x4 flattening of rank >= 3"
    elif not is_pure_exchange(t)[0]:
        lower, evidence = 2, "not pure"
    else:
        lower, evidence = 1, "nonzero"
    d = decompose4(t)
    exact = d.certified and lower == len(d)
    note = ""
    if not exact:
        note = f"rank in [{lower}, {len(d)}]"
        if not d.certified:
            note += "; upper bound from uncertified numeric fit"
    return RankCertificate(len(d), lower, evidence, d, exact, deltas, note)


def in_s3_closure(t: Tensor) -> bool:
    """True iff the three essential deltas vanish (all 24 then vanish)."""
    _check4(t, nonzero=False)
    return _deltas_vanish(t, essential_deltas(t))


def s2_closure_necessary(t: Tensor) -> bool:
    """Necessary test only for the closure of the rank-2 locus.

    True iff every 4x4 flattening has rank at most 2.
    """
    _check4(t, nonzero=False)
    if t.is_zero():
        return True
    return all(bipartite_rank(t, pair) <= 2 for pair in PAIRINGS)


def _gl_action_matrix(u: np.ndarray) -> np.ndarray:
    """16x16 matrix of gamma -> gamma.u for gamma in gl(2)^4 acting by Leibniz.

    Columns are ordered ``(a_j, b_j, c_j, d_j)`` for ``j = 1..4`` where
    ``gamma_j = [[a, b], [c, d]]`` sends ``e0 -> a e0 + c e1`` and
    ``e1 -> b e0 + d e1``.
    """
    exact = u.dtype == object
    cols = []
    for axis in range(4):
        for r, c in ((0, 0), (0, 1), (1, 0), (1, 1)):
            g = np.zeros((2, 2), dtype=int if exact else complex)
            g[r, c] = 1
            if exact:
                g = np.vectorize(GaussianRational, otypes=[object])(g)
            img = np.moveaxis(np.tensordot(g, u, axes=([1], [axis])), 0, axis)
            cols.append(img.ravel())
    return np.array(cols, dtype=object if exact else complex).T


def _stabilizer_point(delta, eps, exact: bool) -> np.ndarray:
    def k4(v):
        return np.multiply.outer(np.multiply.outer(np.multiply.outer(v, v), v), v)

    if exact:
        one, zero = GaussianRational(1), GaussianRational(0)
        e0 = np.array([one, zero], dtype=object)
        e1 = np.array([zero, one], dtype=object)
        delta, eps = GaussianRational.coerce(delta), GaussianRational.coerce(eps)
    else:
        e0, e1 = np.array([1, 0], dtype=complex), np.array([0, 1], dtype=complex)
        delta, eps = complex(delta), complex(eps)
    return k4(e0) + delta * k4(e1) + eps * k4(e0 + e1)


def stabilizer_dimension(delta, eps, exact: bool = True) -> int:
    """Dimension of ``{gamma : gamma.u in span(e0^⊗4, e1^⊗4)}``.

    ``u = e0^⊗4 + delta e1^⊗4 + eps (e0 + e1)^⊗4``; requires ``delta``,
    ``eps`` nonzero and ``delta != 2 eps``. The answer is the nullspace
    dimension of the 14x16 system obtained by dropping the ``e0000`` and
    ``e1111`` rows of the Lie algebra action.
    """
    if exact:
        d, e = GaussianRational.coerce(delta), GaussianRational.coerce(eps)
        excluded = not d or not e or not (d - 2 * e)
    else:
        d, e = complex(delta), complex(eps)
        excluded = abs(d) < 1e-12 or abs(e) < 1e-12 or abs(d - 2 * e) < 1e-12
    if excluded:
        raise ValueError("excluded parameters: need delta, eps nonzero and delta != 2*eps")
    u = _stabilizer_point(delta, eps, exact)
    system = np.delete(_gl_action_matrix(u), [0, 15], axis=0)
    return len(nullspace(system))


def s3_closure_dimension(delta=1, eps=1, exact: bool = True) -> int:
    """``18 - (dim k + 1)``: projective dimension of the rank-3 closure."""
    return 18 - (stabilizer_dimension(delta, eps, exact) + 1)
