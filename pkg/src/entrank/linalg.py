"""Exact and numeric rank, determinants, nullspaces, Schmidt decomposition,
and roots of binary forms on the projective line."""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .scalars import GaussianRational, to_complex_array

DEFAULT_RANK_TOL = 1e-9
CLUSTER_TOL = 1e-6


def _is_exact(m: np.ndarray) -> bool:
    return np.asarray(m).dtype == object


def _rows(m: np.ndarray) -> list[list]:
    return [[GaussianRational.coerce(v) for v in row] for row in np.asarray(m)]


def _bareiss(rows: list[list]) -> tuple[int, GaussianRational]:
    """Fraction-free elimination in place. Returns (rank, signed last pivot)."""
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    prev = GaussianRational(1)
    sign = 1
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        piv = next((i for i in range(r, n_rows) if rows[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            sign = -sign
        p = rows[r][c]
        for i in range(r + 1, n_rows):
            a = rows[i][c]
            rows[i] = [(p * rows[i][j] - a * rows[r][j]) / prev for j in range(n_cols)]
        prev = p
        r += 1
    return r, prev * sign


def matrix_rank(m, tol: float | None = None) -> int:
    """Rank of a matrix.

    Exact (object) matrices use fraction-free Gaussian elimination over Q(i)
    and take no tolerance. Floating matrices count singular values above
    ``tol * sigma_max`` (``tol`` defaults to 1e-9).
    """
    m = np.asarray(m)
    if m.size == 0:
        return 0
    if _is_exact(m):
        if tol is not None:
            raise ValueError("exact rank takes no tolerance")
        rank, _ = _bareiss(_rows(m))
        return rank
    tol = DEFAULT_RANK_TOL if tol is None else tol
    s = np.linalg.svd(to_complex_array(m), compute_uv=False)
    if s[0] == 0:
        return 0
    return int(np.sum(s > tol * s[0]))


def determinant(m):
    """Exact determinant for object matrices, ``numpy.linalg.det`` otherwise."""
    m = np.asarray(m)
    n, k = m.shape
    if n != k:
        raise ValueError("determinant of a non-square matrix")
    if not _is_exact(m):
        return complex(np.linalg.det(to_complex_array(m)))
    if n == 0:
        return GaussianRational(1)
    rows = _rows(m)
    rank, last = _bareiss(rows)
    return last if rank == n else GaussianRational(0)


def nullspace(m, tol: float | None = None) -> list[np.ndarray]:
    """Basis of the right kernel ``{x : m x = 0}``."""
    m = np.asarray(m)
    n_cols = m.shape[1]
    if _is_exact(m):
        rows = _rows(m)
        pivots: list[int] = []
        r = 0
        for c in range(n_cols):
            piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            inv = 1 / rows[r][c]
            rows[r] = [v * inv for v in rows[r]]
            for i in range(len(rows)):
                if i != r and rows[i][c]:
                    f = rows[i][c]
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
            if r == len(rows):
                break
        basis = []
        for free in (c for c in range(n_cols) if c not in pivots):
            v = np.array([GaussianRational(0)] * n_cols, dtype=object)
            v[free] = GaussianRational(1)
            for i, pc in enumerate(pivots):
                v[pc] = -rows[i][free]
            basis.append(v)
        return basis
    tol = DEFAULT_RANK_TOL if tol is None else tol
    mc = to_complex_array(m)
    if mc.size == 0:
        return [row for row in np.eye(n_cols, dtype=complex)]
    _, s, vh = np.linalg.svd(mc)
    cutoff = tol * s[0] if s.size and s[0] > 0 else 0.0
    rank = int(np.sum(s > cutoff)) if s.size and s[0] > 0 else 0
    return [vh[i].conj() for i in range(rank, n_cols)]


def schmidt(m) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Schmidt (singular value) decomposition ``m = U diag(s) V^H``.

    Returns the thin factors ``(U, s, Vh)``: orthonormal columns of ``U``,
    orthonormal rows of ``Vh`` and nonincreasing ``s`` of length ``min(m.shape)``.
    """
    mc = to_complex_array(np.asarray(m))
    try:
        return np.linalg.svd(mc, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise ArithmeticError(f"Schmidt decomposition did not converge: {exc}") from exc


@dataclass(frozen=True)
class HomPoly:
    """Binary form ``P(x, y) = sum_i c_i x^(d-i) y^i``."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if not self.coeffs:
            raise ValueError("a binary form needs at least one coefficient")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def exact(self) -> bool:
        return all(isinstance(c, GaussianRational) for c in self.coeffs)

    def __call__(self, x, y):
        d = self.degree
        return sum(c * x ** (d - i) * y ** i for i, c in enumerate(self.coeffs))

    def norm(self) -> float:
        return float(np.linalg.norm([complex(c) for c in self.coeffs]))

    def discriminant(self):
        if self.degree != 2:
            raise ValueError("discriminant is implemented for quadratics only")
        c0, c1, c2 = self.coeffs
        return c1 * c1 - 4 * c0 * c2


@dataclass(frozen=True)
class RootStructure:
    """Roots of a binary form as normalized projective points.

    ``tag`` is one of ``TwoDistinct``, ``OneDouble``, ``IdenticallyZero``,
    ``GeneralList``; ``roots`` is a list of ``((x, y), multiplicity)``.
    """

    tag: str
    roots: list = field(default_factory=list)

    def points(self) -> list[tuple]:
        return [pt for pt, _ in self.roots]

    def to_json(self) -> dict:
        def enc(z):
            z = complex(z)
            return [z.real, z.imag]
        return {"tag": self.tag,
                "roots": [{"point": [enc(pt[0]), enc(pt[1])], "multiplicity": mult}
                          for pt, mult in self.roots]}


def normalize_point(x, y) -> tuple:
    """Scale ``(x : y)`` so that its leading nonzero coordinate is 1."""
    if isinstance(x, GaussianRational) and isinstance(y, GaussianRational):
        if x:
            return (GaussianRational(1), y / x)
        return (GaussianRational(0), GaussianRational(1))
    x, y = complex(x), complex(y)
    if abs(x) >= 1e-300 and abs(x) >= 1e-12 * abs(y):
        return (1 + 0j, y / x)
    return (0j, 1 + 0j)


def chordal_distance(p, q) -> float:
    """Chordal distance between two points of CP^1, in [0, 1]."""
    x1, y1 = complex(p[0]), complex(p[1])
    x2, y2 = complex(q[0]), complex(q[1])
    den = np.hypot(abs(x1), abs(y1)) * np.hypot(abs(x2), abs(y2))
    return float(abs(x1 * y2 - x2 * y1) / den)


def cluster_points(points: Sequence[tuple], tol: float = CLUSTER_TOL) -> list[tuple]:
    """Group projective points closer than ``tol``; returns ``(point, count)``."""
    groups: list[list] = []
    for pt in points:
        for g in groups:
            if chordal_distance(g[0], pt) < tol:
                g.append(pt)
                break
        else:
            groups.append([pt])
    return [(g[0], len(g)) for g in groups]


def _quadratic_roots(c0, c1, c2) -> list[tuple]:
    # stable form: with q = -(c1 + sqrt(disc)) / 2 the roots are (q : c0), (c2 : q)
    sq = cmath.sqrt(c1 * c1 - 4 * c0 * c2)
    if (c1.conjugate() * sq).real < 0:
        sq = -sq
    q = -(c1 + sq) / 2
    return [normalize_point(q, c0), normalize_point(c2, q)]


def double_root(p: HomPoly):
    """The double root of a quadratic with vanishing discriminant.

    Uses the vertex of the parabola, which needs no square root and stays
    accurate when the discriminant is only numerically zero. Exact input
    gives an exact point.
    """
    c0, c1, c2 = p.coeffs
    if p.exact:
        if c0:
            return normalize_point(-c1 / (2 * c0), GaussianRational(1))
        return (GaussianRational(1), GaussianRational(0))
    c0, c1, c2 = complex(c0), complex(c1), complex(c2)
    if abs(c0) >= abs(c2):
        return normalize_point(-c1 / (2 * c0), 1)
    return normalize_point(1, -c1 / (2 * c2))


def hom_roots(p: HomPoly, abs_tol: float = 1e-10, disc_tol: float | None = None,
              cluster_tol: float = CLUSTER_TOL) -> RootStructure:
    """Root structure of a binary quadratic or quartic on CP^1.

    Degree 2 is classified by its discriminant (exactly for exact
    coefficients). ``abs_tol`` is the absolute threshold under which every
    approximate coefficient counts as zero; ``disc_tol`` is the absolute
    threshold for a vanishing discriminant (default ``1e-10 * |c|^2``).
    Degree 4 uses companion-matrix eigenvalues and clusters roots closer
    than ``cluster_tol`` in the chordal metric.
    """
    if p.degree not in (2, 4):
        raise ValueError(f"unsupported degree {p.degree}")
    exact = p.exact
    if exact:
        if not any(p.coeffs):
            return RootStructure("IdenticallyZero")
    elif all(abs(complex(c)) < abs_tol for c in p.coeffs):
        return RootStructure("IdenticallyZero")

    if p.degree == 2:
        disc = p.discriminant()
        if exact:
            double = not disc
        else:
            tol = 1e-10 * p.norm() ** 2 if disc_tol is None else disc_tol
            double = abs(complex(disc)) <= tol
        if double:
            return RootStructure("OneDouble", [(double_root(p), 2)])
        c0, c1, c2 = (complex(c) for c in p.coeffs)
        r1, r2 = _quadratic_roots(c0, c1, c2)
        return RootStructure("TwoDistinct", [(r1, 1), (r2, 1)])

    coeffs = np.array([complex(c) for c in p.coeffs])
    lead_zero = 0
    while lead_zero < len(coeffs) and abs(coeffs[lead_zero]) < abs_tol:
        lead_zero += 1
    pts = [(1 + 0j, 0j)] * lead_zero
    rest = coeffs[lead_zero:]
    n = len(rest) - 1
    if n > 0:
        comp = np.zeros((n, n), dtype=complex)
        comp[0, :] = -rest[1:] / rest[0]
        comp[1:, :-1] = np.eye(n - 1)
        pts += [normalize_point(r, 1) for r in np.linalg.eigvals(comp)]
    return RootStructure("GeneralList", cluster_points(pts, cluster_tol))
