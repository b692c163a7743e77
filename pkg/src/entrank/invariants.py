"""Closed-form entanglement invariants.

Purity (exchange relations, flattening ranks, partial-trace defect), the
Cayley hyperdeterminant of a 2x2x2 tensor, the 4-qubit flattening
determinants ``delta``, and the dimension-count rank lower bound.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .linalg import determinant, matrix_rank
from .scalars import GaussianRational
from .tensor import Tensor, TensorError, matricize

PURITY_TOL = 1e-10


@dataclass(frozen=True)
class ExchangeWitness:
    """Index tuples with ``u[a] * u[b] != u[c] * u[d]``."""

    a: tuple
    b: tuple
    c: tuple
    d: tuple
    lhs: object
    rhs: object


def _products_differ(lhs, rhs, exact: bool, tol: float) -> bool:
    if exact:
        return lhs != rhs
    return abs(complex(lhs) - complex(rhs)) > tol


def _exchange_reduced(t: Tensor, tol: float):
    arr = t.array
    for axis in range(t.order):
        m = matricize(t, [axis])
        others = [d for i, d in enumerate(t.shape) if i != axis]
        for r1, r2 in itertools.combinations(range(m.shape[0]), 2):
            for c1, c2 in itertools.combinations(range(m.shape[1]), 2):
                lhs = m[r1, c1] * m[r2, c2]
                rhs = m[r1, c2] * m[r2, c1]
                if _products_differ(lhs, rhs, t.exact, tol):
                    i1 = np.unravel_index(c1, others)
                    i2 = np.unravel_index(c2, others)

                    def full(row, rest):
                        idx = [int(v) for v in rest]
                        idx.insert(axis, row)
                        return tuple(idx)

                    a, b = full(r1, i1), full(r2, i2)
                    c, d = full(r1, i2), full(r2, i1)
                    return ExchangeWitness(a, b, c, d, arr[a] * arr[b], arr[c] * arr[d])
    return None


def _exchange_full(t: Tensor, tol: float):
    arr = t.array
    idx = list(np.ndindex(*t.shape))
    k = t.order
    for a, b in itertools.combinations(idx, 2):
        lhs = arr[a] * arr[b]
        for mask in range(1, 2 ** k - 1):
            c = tuple(b[j] if mask >> j & 1 else a[j] for j in range(k))
            d = tuple(a[j] if mask >> j & 1 else b[j] for j in range(k))
            rhs = arr[c] * arr[d]
            if _products_differ(lhs, rhs, t.exact, tol):
                return ExchangeWitness(a, b, c, d, lhs, rhs)
    return None


def is_pure_exchange(t: Tensor, full: bool = False, tol: float = PURITY_TOL):
    """Test purity through the quadratic exchange relations.

    By default only the 2x2 minors of every single-axis flattening are
    checked; ``full=True`` enumerates every quadruple ``(a, b, c, d)`` where
    ``(c_j, d_j)`` permutes ``(a_j, b_j)`` on each axis. Approximate tensors
    compare products within ``tol * |t|^2``.

    Returns ``(is_pure, witness)`` with ``witness`` None on success.
    """
    if t.order < 2:
        return True, None
    abs_tol = 0.0 if t.exact else tol * t.norm() ** 2
    witness = _exchange_full(t, abs_tol) if full else _exchange_reduced(t, abs_tol)
    return witness is None, witness


def bipartite_rank(t: Tensor, row_axes: Sequence[int], tol: float | None = None) -> int:
    """Matrix rank of the flattening with rows over ``row_axes``."""
    m = matricize(t, row_axes)
    return matrix_rank(m) if t.exact else matrix_rank(m, tol)


def single_axis_ranks(t: Tensor, tol: float | None = None) -> tuple[int, ...]:
    """``(delta_1, ..., delta_k)``: ranks of each axis-vs-rest flattening."""
    return tuple(bipartite_rank(t, [j], tol) for j in range(t.order))


def reduced_density(t: Tensor, row_axes: Sequence[int]) -> np.ndarray:
    """Partial trace over the ``row_axes`` block of the normalized projector."""
    m = matricize(t.to_approx(), row_axes)
    nrm = np.linalg.norm(m)
    if nrm == 0:
        raise TensorError("zero tensor has no density matrix")
    m = m / nrm
    return m.T @ m.conj()


def purity_defect(t: Tensor, row_axes: Sequence[int]) -> float:
    """``|rho^2 - rho|_F`` for the reduced density on the complement of ``row_axes``.

    Zero exactly when ``t`` is a product across the bipartition.
    """
    rho = reduced_density(t, row_axes)
    return float(np.linalg.norm(rho @ rho - rho))


def bipartitions(order: int):
    """Each unordered bipartition once, as the block containing axis 0."""
    rest = list(range(1, order))
    for n in range(0, order - 1):
        for extra in itertools.combinations(rest, n):
            yield (0,) + extra


def hyperdet(t: Tensor):
    """Cayley hyperdeterminant of a 2x2x2 tensor, from its monomial expansion."""
    if t.shape != (2, 2, 2):
        raise TensorError(f"hyperdet needs shape (2, 2, 2), got {t.shape}")
    u = t.array if t.exact else t.array.astype(complex)
    u000, u001, u010, u011 = u[0, 0, 0], u[0, 0, 1], u[0, 1, 0], u[0, 1, 1]
    u100, u101, u110, u111 = u[1, 0, 0], u[1, 0, 1], u[1, 1, 0], u[1, 1, 1]
    squares = (u000**2 * u111**2 + u001**2 * u110**2
               + u010**2 * u101**2 + u011**2 * u100**2)
    mixed = (u000 * u001 * u110 * u111 + u000 * u010 * u101 * u111
             + u000 * u011 * u100 * u111 + u001 * u010 * u101 * u110
             + u001 * u011 * u110 * u100 + u010 * u011 * u101 * u100)
    cross = u000 * u011 * u101 * u110 + u001 * u010 * u100 * u111
    value = squares - 2 * mixed + 4 * cross
    return value if t.exact else complex(value)


def _parse_perm(perm) -> tuple[int, int, int, int]:
    if isinstance(perm, str):
        perm = [int(ch) for ch in perm]
    perm = tuple(int(p) for p in perm)
    if sorted(perm) != [1, 2, 3, 4]:
        raise TensorError(f"{perm} is not a permutation of (1, 2, 3, 4)")
    return perm


def delta_matrix(t: Tensor, perm) -> np.ndarray:
    """4x4 flattening with rows over axes (i, j) and columns over (k, l), in order.

    ``perm`` uses 1-based axis labels, e.g. ``"1324"``.
    """
    if t.shape != (2, 2, 2, 2):
        raise TensorError(f"delta needs shape (2, 2, 2, 2), got {t.shape}")
    axes = [p - 1 for p in _parse_perm(perm)]
    return np.transpose(t.array, axes).reshape(4, 4)


def delta(t: Tensor, perm):
    """``det`` of the (ij | kl) flattening of a 4-qubit tensor.

    With row-major layout the three essential values satisfy
    ``delta(1234) - delta(1324) + delta(1423) == 0``.
    """
    return determinant(delta_matrix(t, perm))


ESSENTIAL_PERMS = ("1234", "1324", "1423")


def essential_deltas(t: Tensor) -> dict:
    return {p: delta(t, p) for p in ESSENTIAL_PERMS}


def rank_lower_bound(dims: Sequence[int]) -> Fraction:
    """``prod(d) / (sum(d) - k + 1)``: the highest rank in the space is at least this."""
    dims = [int(d) for d in dims]
    if len(dims) < 2 or any(d < 1 for d in dims):
        raise ValueError("need k >= 2 dimensions, each >= 1")
    return Fraction(math.prod(dims), sum(dims) - len(dims) + 1)


def vanishes(value, scale: float, rel_tol: float = 1e-10) -> bool:
    """Exact zero for exact scalars, else ``|value| < rel_tol * scale``."""
    if isinstance(value, GaussianRational):
        return not value
    return abs(complex(value)) < rel_tol * scale
