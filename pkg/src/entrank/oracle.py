"""Numerical oracle: alternating least squares CP fitting, border-rank
diagnostics and decomposition checks.

Nothing here is used to certify a rank; ALS results only ever bound the
border rank from above and are labelled as such.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import least_squares

from .tensor import Decomposition, Tensor, TensorError, frobenius_distance

BLOWUP_FACTOR = 1e3


@dataclass
class FitReport:
    residual: float
    decomposition: Decomposition
    max_factor_norm: float
    iterations: int
    blowup: bool = False
    polish_evaluations: int = 0


def khatri_rao(mats: list[np.ndarray]) -> np.ndarray:
    """Column-wise Kronecker product, first matrix slowest."""
    out = mats[0]
    for m in mats[1:]:
        out = (out[:, None, :] * m[None, :, :]).reshape(-1, out.shape[1])
    return out


def _unfold(x: np.ndarray, mode: int) -> np.ndarray:
    return np.moveaxis(x, mode, 0).reshape(x.shape[mode], -1)


def _reconstruct(factors: list[np.ndarray]) -> np.ndarray:
    shape = [f.shape[0] for f in factors]
    return (factors[0] @ khatri_rao(factors[1:]).T).reshape(shape)


def _balance(factors: list[np.ndarray]) -> list[np.ndarray]:
    """Unit columns on every axis but the last, which absorbs the weights."""
    out = [f.copy() for f in factors]
    for f in out[:-1]:
        n = np.linalg.norm(f, axis=0)
        n[n == 0] = 1.0
        f /= n
        out[-1] *= n
    return out


def _to_decomposition(factors: list[np.ndarray]) -> Decomposition:
    terms = []
    for j in range(factors[0].shape[1]):
        cols = [f[:, j] for f in factors]
        norms = [np.linalg.norm(c) for c in cols]
        if min(norms) == 0:
            continue
        terms.append((math.prod(norms), tuple(c / n for c, n in zip(cols, norms))))
    return Decomposition(tuple(terms), certified=False)


def _from_decomposition(d: Decomposition, r: int, rng) -> list[np.ndarray]:
    k = len(d.terms[0][1])
    shape = [len(f) for f in d.terms[0][1]]
    factors = [np.zeros((shape[n], r), dtype=complex) for n in range(k)]
    for j in range(r):
        if j < len(d.terms):
            w, fs = d.terms[j]
            for n in range(k):
                factors[n][:, j] = np.asarray(fs[n], dtype=complex)
            factors[-1][:, j] *= complex(w)
        else:
            for n in range(k):
                factors[n][:, j] = 1e-3 * (rng.standard_normal(shape[n])
                                           + 1j * rng.standard_normal(shape[n]))
    return factors


def _random_factors(shape, r, rng) -> list[np.ndarray]:
    out = []
    for d in shape:
        f = rng.standard_normal((d, r)) + 1j * rng.standard_normal((d, r))
        out.append(f / np.linalg.norm(f, axis=0))
    return out


def _als_run(x: np.ndarray, factors: list[np.ndarray], max_iters: int,
             patience: int = 10, min_gain: float = 1e-12) -> tuple[list, float, int]:
    nx = np.linalg.norm(x)
    k = x.ndim
    unfolded = [_unfold(x, n) for n in range(k)]
    history = []
    res = np.inf
    it = 0
    for it in range(1, max_iters + 1):
        for n in range(k):
            others = [factors[m] for m in range(k) if m != n]
            kr = khatri_rao(others)
            sol, *_ = np.linalg.lstsq(kr, unfolded[n].T, rcond=None)
            factors[n] = sol.T
        factors = _balance(factors)
        res = np.linalg.norm(x - _reconstruct(factors)) / nx
        history.append(res)
        if res < 1e-15:
            break
        if len(history) > patience and history[-patience - 1] - res < min_gain:
            break
    return factors, float(res), it


def _jacobian(factors: list[np.ndarray]) -> np.ndarray:
    """Complex Jacobian of the reconstruction w.r.t. all factor entries."""
    k = len(factors)
    cols = []
    for n in range(k):
        others = [factors[m] for m in range(k) if m != n]
        kr = khatri_rao(others)
        d, r = factors[n].shape
        other_shape = [o.shape[0] for o in others]
        for i in range(d):
            for j in range(r):
                blk = np.zeros((d, kr.shape[0]), dtype=complex)
                blk[i] = kr[:, j]
                cols.append(np.moveaxis(blk.reshape([d] + other_shape), 0, n).ravel())
    return np.array(cols).T


def _polish(x: np.ndarray, factors: list[np.ndarray], max_nfev: int) -> tuple[list, int]:
    """Trust-region least-squares refinement of all factors jointly.

    ALS alone crawls when the best fit runs off to infinity (a border-rank
    swamp); a joint Gauss-Newton step follows the diverging direction much
    faster.
    """
    shapes = [f.shape for f in factors]
    sizes = [f.size for f in factors]
    nc = sum(sizes)

    def unpack(p):
        z = p[:nc] + 1j * p[nc:]
        out, o = [], 0
        for s, n in zip(shapes, sizes):
            out.append(z[o:o + n].reshape(s))
            o += n
        return out

    def fun(p):
        r = (_reconstruct(unpack(p)) - x).ravel()
        return np.concatenate([r.real, r.imag])

    def jac(p):
        jc = _jacobian(unpack(p))
        return np.block([[jc.real, -jc.imag], [jc.imag, jc.real]])

    z = np.concatenate([f.ravel() for f in factors])
    p0 = np.concatenate([z.real, z.imag])
    sol = least_squares(fun, p0, jac=jac, method="trf", x_scale="jac",
                        xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=max_nfev)
    return _balance(unpack(sol.x)), int(sol.nfev)


def als_fit(t: Tensor, r: int, restarts: int = 10, max_iters: int = 1000, seed: int = 0,
            init: list[Decomposition] | None = None, polish: bool = True) -> FitReport:
    """Best-of-restarts ALS fit of an ``r``-term decomposition.

    Each restart cycles through the axes solving the linear least-squares
    problem for one factor matrix with the others fixed. Restarts start
    from unit-norm complex Gaussian factors drawn from ``seed``; decompositions
    passed in ``init`` are used as additional starting points. The residual
    is relative to ``|t|``; ``max_factor_norm`` is the largest term weight
    after normalizing all but the last axis.

    With ``polish`` the best restart is refined by a joint trust-region
    least-squares solve (at most ``10 * max_iters`` evaluations), kept only
    if it lowers the residual.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    x = t.complex_array()
    nx = np.linalg.norm(x)
    if nx == 0:
        raise TensorError("zero tensor")
    rng = np.random.default_rng(seed)
    starts = [_from_decomposition(d, r, rng) for d in (init or [])]
    starts += [_random_factors(x.shape, r, rng) for _ in range(restarts)]
    best = None
    total_iters = 0
    for factors in starts:
        factors, res, its = _als_run(x, _balance(factors), max_iters)
        total_iters += its
        if best is None or res < best[1]:
            best = (factors, res)
    factors, res = best
    nfev = 0
    if polish and res > 1e-15:
        polished, nfev = _polish(x, factors, 10 * max_iters)
        pres = float(np.linalg.norm(x - _reconstruct(polished)) / nx)
        if pres < res:
            factors, res = polished, pres
    max_norm = float(np.max(np.linalg.norm(factors[-1], axis=0)))
    return FitReport(residual=res, decomposition=_to_decomposition(factors),
                     max_factor_norm=max_norm, iterations=total_iters,
                     blowup=max_norm > BLOWUP_FACTOR * nx, polish_evaluations=nfev)


@dataclass
class BorderRankEstimate:
    """Smallest ``r`` whose ALS fit met the tolerance. Not a rank certificate."""

    estimate: int | None
    reports: dict = field(default_factory=dict)
    blowup: bool = False
    label: str = "border-rank estimate"


def numeric_rank_estimate(t: Tensor, tol: float = 1e-6, max_rank: int | None = None,
                          restarts: int = 10, max_iters: int = 3000,
                          seed: int = 0) -> BorderRankEstimate:
    """Sweep ``r = 1, 2, ...`` and stop at the first ALS residual below ``tol``.

    May undershoot the rank when the tensor is only a limit of lower-rank
    tensors; ``blowup`` then reports diverging factor norms.
    """
    max_rank = max_rank or math.prod(t.shape)
    reports = {}
    for r in range(1, max_rank + 1):
        rep = als_fit(t, r, restarts=restarts, max_iters=max_iters, seed=seed)
        reports[r] = rep
        if rep.residual < tol:
            return BorderRankEstimate(r, reports, rep.blowup)
    return BorderRankEstimate(None, reports, False)


def verify_decomposition(t: Tensor, d: Decomposition, tol: float | None = 1e-9) -> bool:
    """Check that ``d`` reconstructs ``t`` and has no zero factors.

    ``tol=None`` demands exact equality (both sides exact); otherwise the
    relative Frobenius distance must be at most ``tol``.
    """
    if not d.terms:
        return t.is_zero(0.0 if tol is None else tol)
    for _, fs in d.terms:
        if len(fs) != t.order or any(len(f) != n for f, n in zip(fs, t.shape)):
            raise TensorError("decomposition factors do not match the tensor shape")
        if any(not np.any(f != 0) for f in fs):
            return False
    rec = d.reconstruct()
    if tol is None:
        if not (t.exact and rec.exact):
            raise TensorError("exact verification needs exact tensor and decomposition")
        return rec == t
    nt = t.norm()
    return frobenius_distance(rec.to_approx(), t.to_approx()) <= tol * (nt if nt else 1.0)
