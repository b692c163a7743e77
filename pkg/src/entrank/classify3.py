"""Three-qubit tensors: classification, rank, explicit decompositions,
local-unitary normal forms and real rank.

Every nonzero ``t`` in C^2 ⊗ C^2 ⊗ C^2 falls in exactly one case:

``Pure``             rank 1
``Biseparable``      not pure, one flattening of rank 1 (axis ``j``); rank 2
``Rank2Generic``     hyperdeterminant nonzero; rank 2
``Rank3Degenerate``  hyperdeterminant zero, all flattenings of rank 2; rank 3

The decomposition for the generic case uses the two roots of the binary
quadratic ``P(x, y) = det(x T0 + y T1)`` where ``T0, T1`` are the slices of
``t`` along the first axis; its discriminant equals the hyperdeterminant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .invariants import (PURITY_TOL, hyperdet, is_pure_exchange, single_axis_ranks,
                         vanishes)
from .linalg import HomPoly, RootStructure, chordal_distance, hom_roots
from .scalars import GaussianRational
from .tensor import Decomposition, Tensor, TensorError, apply_local, from_array, outer

CASES = ("Pure", "Biseparable", "Rank2Generic", "Rank3Degenerate")
CASE_RANK = {"Pure": 1, "Biseparable": 2, "Rank2Generic": 2, "Rank3Degenerate": 3}
ROOT_SEPARATION = 1e-6


class ClassificationError(ArithmeticError):
    """Internal consistency failure between independent certificates."""


@dataclass(frozen=True)
class Classification3:
    case: str
    rank: int
    hyperdet: object
    deltas: tuple
    roots: RootStructure
    axis: int | None = None  # 1-based biseparable axis

    def to_json(self) -> dict:
        out = {"case": self.case, "rank": self.rank,
               "hyperdet": _scalar_json(self.hyperdet),
               "deltas": list(self.deltas),
               "roots": self.roots.to_json()}
        if self.axis is not None:
            out["axis"] = self.axis
        return out


def _scalar_json(v):
    if isinstance(v, GaussianRational):
        return {"re": str(v.re), "im": str(v.im)}
    v = complex(v)
    return {"re": v.real, "im": v.imag}


def _check3(t: Tensor):
    if t.shape != (2, 2, 2):
        raise TensorError(f"expected shape (2, 2, 2), got {t.shape}")
    if t.is_zero():
        raise TensorError("zero tensor")


def slice_polynomial(t: Tensor) -> HomPoly:
    """``det(x T(e0) + y T(e1))`` with slices taken along the first axis."""
    a, b = t.array[0], t.array[1]
    if not t.exact:
        a, b = a.astype(complex), b.astype(complex)
    c0 = a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
    c1 = a[0, 0] * b[1, 1] + b[0, 0] * a[1, 1] - a[0, 1] * b[1, 0] - b[0, 1] * a[1, 0]
    c2 = b[0, 0] * b[1, 1] - b[0, 1] * b[1, 0]
    return HomPoly((c0, c1, c2))


def _expected_root_tag(case: str, axis: int | None) -> set[str]:
    if case == "Rank2Generic":
        return {"TwoDistinct"}
    if case == "Rank3Degenerate":
        return {"OneDouble"}
    if case == "Biseparable" and axis == 1:
        # T has rank 1 so P is a multiple of a square
        return {"OneDouble"}
    return {"IdenticallyZero"}


def classify3(t: Tensor, tol: float = PURITY_TOL) -> Classification3:
    """Classify a nonzero 2x2x2 tensor.

    Order of tests: exchange relations, then single-axis flattening ranks,
    then the hyperdeterminant. The root structure of the slice polynomial is
    attached as a certificate and checked against the case. Approximate
    tensors treat ``|D| < tol * |t|^4`` as zero.
    """
    _check3(t)
    n2 = 1.0 if t.exact else t.norm() ** 2
    pure, _ = is_pure_exchange(t, tol=tol)
    deltas = single_axis_ranks(t)
    d = hyperdet(t)
    roots = hom_roots(slice_polynomial(t), abs_tol=tol * n2, disc_tol=tol * n2 ** 2)

    axis = None
    if pure:
        case = "Pure"
    elif 1 in deltas:
        if deltas.count(1) != 1:
            raise ClassificationError(f"non-pure tensor with flattening ranks {deltas}")
        case = "Biseparable"
        axis = deltas.index(1) + 1
    elif vanishes(d, n2 ** 2, tol):
        case = "Rank3Degenerate"
    else:
        case = "Rank2Generic"

    if roots.tag not in _expected_root_tag(case, axis):
        raise ClassificationError(f"{case} with slice-polynomial roots {roots.tag}")
    return Classification3(case, CASE_RANK[case], d, deltas, roots, axis)


# -- decompositions (floating point) ---------------------------------------

def _perp(v: np.ndarray) -> np.ndarray:
    """Unit vector orthogonal to the unit 2-vector ``v``."""
    return np.array([-np.conj(v[1]), np.conj(v[0])])


def _unit(v: np.ndarray) -> tuple[float, np.ndarray]:
    n = float(np.linalg.norm(v))
    return n, v / n


def rank1_factors(arr: np.ndarray) -> tuple[complex, list[np.ndarray]]:
    """Best rank-1 factorization ``weight * f1 ⊗ ... ⊗ fk`` with unit factors."""
    factors = []
    for axis in range(arr.ndim):
        m = np.moveaxis(arr, axis, 0).reshape(arr.shape[axis], -1)
        u, _, _ = np.linalg.svd(m)
        factors.append(u[:, 0])
    w = arr
    for f in factors:
        w = np.tensordot(f.conj(), w, axes=([0], [0]))
    return complex(w), factors


def _term(weight, factors) -> tuple:
    norms = [np.linalg.norm(f) for f in factors]
    return (complex(weight) * math.prod(norms), tuple(f / n for f, n in zip(factors, norms)))


def _pair_terms(arr: np.ndarray, p1, p2) -> list[tuple]:
    """Decompose ``t = sum_a e_a ⊗ T_a`` through the slices at ``p1``, ``p2``.

    Returns ``(row, slice)`` pairs with ``t = sum_i row_i ⊗ slice_i``.
    """
    g = np.array([[p1[0], p2[0]], [p1[1], p2[1]]], dtype=complex)
    ginv = np.linalg.inv(g)
    out = []
    for i, p in enumerate((p1, p2)):
        s = np.tensordot(np.array(p, dtype=complex), arr, axes=([0], [0]))
        out.append((ginv[i], s))
    return out


def _generic_terms(arr: np.ndarray, roots) -> list[tuple]:
    (p1, _), (p2, _) = roots.roots
    if chordal_distance(p1, p2) < ROOT_SEPARATION:
        raise ArithmeticError("slice-polynomial roots too close for a stable decomposition; "
                              "retry with exact input")
    terms = []
    for row, s in _pair_terms(arr, p1, p2):
        u, sv, vh = np.linalg.svd(s)
        terms.append(_term(sv[0], [row, u[:, 0], vh[0]]))
    return terms


def degenerate_form(arr: np.ndarray, roots) -> tuple[np.ndarray, ...]:
    """Vectors with ``t = v1⊗v2⊗v3 + w1⊗(v2⊗w3 + w2⊗v3)`` for a rank-3 tensor.

    At the double root ``p`` of the slice polynomial the slice ``M0 = T(p)``
    is rank one, ``a ⊗ b``; any complementary slice ``N`` has no component
    on ``a' ⊗ b'`` in the adapted bases because ``p`` is a double root.
    """
    p = np.array(roots.roots[0][0], dtype=complex)
    p = p / np.linalg.norm(p)
    q = _perp(p)
    (g0, m0), (g1, n) = _pair_terms(arr, p, q)
    u, sv, vh = np.linalg.svd(m0)
    coords = u.conj().T @ n @ vh.conj().T
    v1 = sv[0] * g0 + coords[0, 0] * g1
    v2, v3 = u[:, 0], vh[0]
    w1 = g1
    w2 = coords[1, 0] * u[:, 1]
    w3 = coords[0, 1] * vh[1]
    return v1, v2, v3, w1, w2, w3


def _degenerate_terms(arr: np.ndarray, roots) -> list[tuple]:
    v1, v2, v3, w1, w2, w3 = degenerate_form(arr, roots)
    return [_term(1, [v1, v2, v3]), _term(1, [w1, v2, w3]), _term(1, [w1, w2, v3])]


def _biseparable_terms(arr: np.ndarray, axis: int) -> list[tuple]:
    j = axis - 1
    m = np.moveaxis(arr, j, 0).reshape(2, 4)
    u, _, _ = np.linalg.svd(m)
    f = u[:, 0]
    core = np.tensordot(f.conj(), arr, axes=([0], [j]))
    cu, cs, cvh = np.linalg.svd(core)
    terms = []
    for i in range(2):
        factors = [cu[:, i], cvh[i]]
        factors.insert(j, f)
        terms.append(_term(cs[i], factors))
    return terms


def decompose3(t: Tensor, classification: Classification3 | None = None) -> Decomposition:
    """Explicit rank-length decomposition of a nonzero 2x2x2 tensor.

    Runs in floating point; factors come back unit-norm with the magnitude
    carried by the weights.
    """
    c = classification or classify3(t)
    ta = t.to_approx()
    arr = ta.array
    if c.case == "Pure":
        w, fs = rank1_factors(arr)
        terms = [(w, tuple(fs))]
    elif c.case == "Biseparable":
        terms = _biseparable_terms(arr, c.axis)
    elif c.case == "Rank2Generic":
        roots = c.roots if not t.exact else classify3(ta).roots
        terms = _generic_terms(arr, roots)
    else:
        roots = c.roots if not t.exact else classify3(ta).roots
        terms = _degenerate_terms(arr, roots)
    return Decomposition(tuple(terms))


# -- normal forms ------------------------------------------------------------

@dataclass(frozen=True)
class NormalForm3:
    """Local-unitary normal form ``t = phase * (U1 ⊗ U2 ⊗ U3) form``.

    ``case`` matches :class:`Classification3`; ``params`` holds ``theta``
    (Biseparable), ``lam, z, theta1..3`` (Rank2Generic) or ``theta1..3``
    (Rank3Degenerate). ``boundary`` flags angles at 0 or pi/2.
    """

    case: str
    params: dict
    unitaries: tuple
    phase: complex
    axis: int | None = None
    boundary: bool = False
    scale: float = 1.0

    def form(self) -> Tensor:
        p = self.params
        e0, e1 = np.array([1, 0], dtype=complex), np.array([0, 1], dtype=complex)

        def rot(th):
            return np.cos(th) * e0 + np.sin(th) * e1

        if self.case == "Pure":
            arr = outer([e0, e0, e0])
        elif self.case == "Biseparable":
            th = p["theta"]
            arr = np.zeros((2, 2, 2), dtype=complex)
            idx0, idx1 = [0, 0], [1, 1]
            idx0.insert(self.axis - 1, 0)
            idx1.insert(self.axis - 1, 0)
            arr[tuple(idx0)] = np.cos(th)
            arr[tuple(idx1)] = np.sin(th)
        elif self.case == "Rank2Generic":
            arr = (p["lam"] * outer([e0, e0, e0])
                   + p["z"] * outer([rot(p["theta1"]), rot(p["theta2"]), rot(p["theta3"])]))
        else:
            t1, t2, t3 = p["theta1"], p["theta2"], p["theta3"]
            arr = (np.cos(t1) * outer([e0, e0, e0])
                   + np.sin(t1) * outer([e1, np.cos(t2) * outer([e0, rot(t3)])
                                         + np.sin(t2) * outer([e1, e0])]))
        return from_array(arr)

    def reconstruct(self) -> Tensor:
        """Unit-norm tensor rebuilt from the recorded parameters and unitaries."""
        return self.phase * apply_local(self.form(), list(self.unitaries))

    def constraint(self) -> float:
        """``lam^2 + |z|^2 + 2 lam Re(z) prod(cos theta_j)``; 1 for unit-norm input."""
        if self.case != "Rank2Generic":
            raise ValueError("constraint applies to the Rank2Generic form only")
        p = self.params
        c = math.cos(p["theta1"]) * math.cos(p["theta2"]) * math.cos(p["theta3"])
        z = complex(p["z"])
        return p["lam"] ** 2 + abs(z) ** 2 + 2 * p["lam"] * z.real * c

    def to_json(self) -> dict:
        params = {k: (_scalar_json(v) if isinstance(v, complex) else v)
                  for k, v in self.params.items()}
        out = {"case": self.case, "params": params, "phase": _scalar_json(self.phase),
               "boundary": self.boundary, "scale": self.scale,
               "unitaries": [[[_scalar_json(x) for x in row] for row in u]
                             for u in self.unitaries]}
        if self.axis is not None:
            out["axis"] = self.axis
        return out


def _on_boundary(*angles, tol=1e-9) -> bool:
    return any(a < tol or abs(a - math.pi / 2) < tol for a in angles)


def _basis_with(v: np.ndarray) -> np.ndarray:
    _, v = _unit(v)
    return np.column_stack([v, _perp(v)])


def _nf_rank2(arr: np.ndarray, roots) -> tuple:
    terms = sorted(_generic_terms(arr, roots), key=lambda tm: -abs(tm[0]))
    (p, vs), (q, ws) = terms
    unitaries, thetas, phis = [], [], []
    for v, w in zip(vs, ws):
        vp = _perp(v)
        alpha, beta = np.vdot(v, w), np.vdot(vp, w)
        arg_a = np.angle(alpha) if abs(alpha) > 1e-14 else 0.0
        arg_b = np.angle(beta) if abs(beta) > 1e-14 else arg_a
        vp = vp * np.exp(1j * (arg_b - arg_a))
        unitaries.append(np.column_stack([v, vp]))
        thetas.append(math.atan2(abs(beta), abs(alpha)))
        phis.append(arg_a)
    g = p / abs(p)
    lam = abs(p)
    z = complex(q * np.exp(1j * sum(phis)) / g)
    params = {"lam": lam, "z": z, "theta1": thetas[0], "theta2": thetas[1], "theta3": thetas[2]}
    return params, tuple(unitaries), complex(g), _on_boundary(*thetas)


def _nf_rank3(arr: np.ndarray, roots) -> tuple:
    v1, v2, v3, w1, w2, w3 = degenerate_form(arr, roots)
    # gauge: v1 += a w1, w3 -= a v3 keeps the tensor; choose a so w1 ⟂ v1
    a = -np.vdot(w1, v1) / np.vdot(w1, w1)
    v1, w3 = v1 + a * w1, w3 - a * v3
    # gauge: w2 -= b v2, w3 += b v3; choose b so w2 ⟂ v2
    b = np.vdot(v2, w2) / np.vdot(v2, v2)
    w2, w3 = w2 - b * v2, w3 + b * v3
    u1 = np.column_stack([_unit(v1)[1], _unit(w1)[1]])
    u2 = np.column_stack([_unit(v2)[1], _unit(w2)[1]])
    u3 = _basis_with(v3)
    tp = apply_local(from_array(arr), [u.conj().T for u in (u1, u2, u3)]).array
    ph = {k: (np.angle(tp[k]) if abs(tp[k]) > 1e-14 else 0.0)
          for k in [(0, 0, 0), (1, 0, 0), (1, 0, 1), (1, 1, 0)]}
    d1 = np.exp(1j * np.array([ph[0, 0, 0], ph[1, 0, 0]]))
    d2 = np.exp(1j * np.array([0.0, ph[1, 1, 0] - ph[1, 0, 0]]))
    d3 = np.exp(1j * np.array([0.0, ph[1, 0, 1] - ph[1, 0, 0]]))
    u1, u2, u3 = u1 * d1, u2 * d2, u3 * d3
    lam, m0, m1, nu = (abs(tp[0, 0, 0]), abs(tp[1, 0, 0]), abs(tp[1, 0, 1]), abs(tp[1, 1, 0]))
    mu = math.hypot(m0, m1)
    th1 = math.atan2(math.hypot(mu, nu), lam)
    th2 = math.atan2(nu, mu)
    th3 = math.atan2(m1, m0)
    params = {"theta1": th1, "theta2": th2, "theta3": th3}
    return params, (u1, u2, u3), 1 + 0j, _on_boundary(th1, th2, th3)


def normal_form3(t: Tensor) -> NormalForm3:
    """Local-unitary normal form of the normalized tensor ``t / |t|``."""
    _check3(t)
    scale = t.norm()
    ta = (1 / scale) * t.to_approx()
    arr = ta.array
    c = classify3(ta)
    expected = classify3(t).case if t.exact else c.case
    if expected != c.case:
        raise ClassificationError(f"exact case {expected} but floating case {c.case}")
    axis = None
    if c.case == "Pure":
        w, fs = rank1_factors(arr)
        unitaries = tuple(_basis_with(f) for f in fs)
        params, phase, boundary = {}, complex(w), False
    elif c.case == "Biseparable":
        axis = c.axis
        j = axis - 1
        m = np.moveaxis(arr, j, 0).reshape(2, 4)
        f = np.linalg.svd(m)[0][:, 0]
        core = np.tensordot(f.conj(), arr, axes=([0], [j]))
        cu, cs, cvh = np.linalg.svd(core)
        theta = math.atan2(cs[1], cs[0])
        us = [cu, cvh.T]
        us.insert(j, _basis_with(f))
        unitaries = tuple(us)
        params, phase, boundary = {"theta": theta}, 1 + 0j, _on_boundary(theta)
    elif c.case == "Rank2Generic":
        params, unitaries, phase, boundary = _nf_rank2(arr, c.roots)
    else:
        params, unitaries, phase, boundary = _nf_rank3(arr, c.roots)
    return NormalForm3(c.case, params, unitaries, phase, axis, boundary, scale)


# -- real rank ---------------------------------------------------------------

def real_rank3(t: Tensor) -> int:
    """Rank of a real 2x2x2 tensor over the reals.

    Agrees with the complex rank except for generic (hyperdeterminant
    nonzero) tensors whose slice polynomial has complex-conjugate roots,
    i.e. negative hyperdeterminant, which need three real terms.
    """
    _check3(t)
    if t.exact:
        if any(v.im for v in t.array.ravel()):
            raise TensorError("real_rank3 needs real entries")
    elif np.max(np.abs(t.array.imag)) > 1e-12 * t.norm():
        raise TensorError("real_rank3 needs real entries")
    c = classify3(t)
    if c.case != "Rank2Generic":
        return c.rank
    d = c.hyperdet
    negative = d.re < 0 if isinstance(d, GaussianRational) else complex(d).real < 0
    return 3 if negative else 2
