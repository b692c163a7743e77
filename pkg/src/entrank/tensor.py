"""Dense tensors over an exact (Q(i)) or floating complex scalar domain.

Layout is row-major with the last index fastest, i.e. numpy C order. A
tensor with shape ``(d1, ..., dk)`` therefore has flat entry ``n`` at the
multi-index ``np.unravel_index(n, shape)``. Every matricization in the
package is defined against this layout.
"""

from __future__ import annotations

import json
import math
import numbers
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .scalars import GaussianRational, exact_array, to_complex_array


class TensorError(ValueError):
    """Raised on contract violations (shape mismatch, wrong domain, ...)."""


def _is_exact_scalar(v) -> bool:
    return isinstance(v, (GaussianRational, numbers.Rational)) and not isinstance(v, bool)


def _is_approx_scalar(v) -> bool:
    return isinstance(v, (float, complex, np.floating, np.complexfloating))


class Tensor:
    """Immutable dense tensor.

    ``exact`` tensors hold :class:`GaussianRational` entries in an object
    array; approximate tensors hold ``complex128``.
    """

    __slots__ = ("_array", "exact")

    def __init__(self, array: np.ndarray, exact: bool):
        array = np.array(array, dtype=object if exact else complex, copy=True)
        if exact:
            array = exact_array(array) if array.size else array
        if array.ndim == 0:
            raise TensorError("a tensor needs at least one axis")
        array.setflags(write=False)
        object.__setattr__(self, "_array", array)
        object.__setattr__(self, "exact", bool(exact))

    def __setattr__(self, name, value):
        raise AttributeError("Tensor is immutable")

    @property
    def array(self) -> np.ndarray:
        """Read-only shaped view of the entries."""
        return self._array

    @property
    def shape(self) -> tuple[int, ...]:
        return self._array.shape

    @property
    def order(self) -> int:
        return self._array.ndim

    @property
    def entries(self) -> list:
        """Flat entries in layout order."""
        return list(self._array.ravel())

    def to_approx(self) -> "Tensor":
        if not self.exact:
            return self
        return Tensor(to_complex_array(self._array), exact=False)

    def complex_array(self) -> np.ndarray:
        return to_complex_array(self._array)

    def norm(self) -> float:
        """Frobenius norm (float in both domains)."""
        return float(np.linalg.norm(self.complex_array()))

    def norm2_exact(self) -> Fraction:
        if not self.exact:
            raise TensorError("exact squared norm requires the exact domain")
        return sum((v.abs2() for v in self._array.ravel()), Fraction(0))

    def is_zero(self, tol: float = 0.0) -> bool:
        if self.exact:
            return not any(self._array.ravel())
        return self.norm() <= tol

    def __getitem__(self, idx):
        return self._array[idx]

    def _coerce_scalar(self, c):
        if self.exact:
            if not _is_exact_scalar(c):
                raise TensorError("exact tensors only scale by exact scalars")
            return GaussianRational.coerce(c)
        return complex(c)

    def __mul__(self, c) -> "Tensor":
        return Tensor(self._array * self._coerce_scalar(c), self.exact)

    __rmul__ = __mul__

    def __neg__(self) -> "Tensor":
        return Tensor(-self._array, self.exact)

    def _check_peer(self, other: "Tensor"):
        if not isinstance(other, Tensor):
            return NotImplemented
        if other.shape != self.shape:
            raise TensorError(f"shape mismatch {self.shape} vs {other.shape}")
        if other.exact != self.exact:
            raise TensorError("mixed scalar domains")
        return None

    def __add__(self, other: "Tensor") -> "Tensor":
        bad = self._check_peer(other)
        if bad is NotImplemented:
            return bad
        return Tensor(self._array + other._array, self.exact)

    def __sub__(self, other: "Tensor") -> "Tensor":
        bad = self._check_peer(other)
        if bad is NotImplemented:
            return bad
        return Tensor(self._array - other._array, self.exact)

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return (self.shape == other.shape and self.exact == other.exact
                and bool(np.all(self._array == other._array)))

    __hash__ = None

    def __repr__(self):
        dom = "exact" if self.exact else "approx"
        return f"Tensor(shape={self.shape}, {dom}, entries={self.entries})"


def tensor_new(shape: Sequence[int], entries: Sequence, exact: bool | None = None) -> Tensor:
    """Build a tensor from a shape and a flat entry list.

    The domain is inferred from the entries when ``exact`` is None: all
    rational/Gaussian-rational entries give an exact tensor, all float or
    complex entries an approximate one. Mixing the two raises.
    """
    shape = tuple(int(d) for d in shape)
    if not shape or any(d < 1 for d in shape):
        raise TensorError(f"invalid shape {shape}")
    entries = list(entries)
    if len(entries) != math.prod(shape):
        raise TensorError(f"length mismatch: {len(entries)} entries for shape {shape}")
    n_exact = sum(_is_exact_scalar(v) for v in entries)
    n_approx = sum(_is_approx_scalar(v) for v in entries)
    if n_exact + n_approx != len(entries):
        raise TensorError("unsupported scalar type in entries")
    if exact is None:
        if n_exact and n_approx:
            raise TensorError("mixed scalar domains")
        exact = n_approx == 0
    elif exact and n_approx:
        raise TensorError("mixed scalar domains: float entries in an exact tensor")
    if exact:
        data = exact_array(entries)
    else:
        data = np.array([complex(v) for v in entries], dtype=complex)
    return Tensor(data.reshape(shape), exact=exact)


def from_array(array, exact: bool = False) -> Tensor:
    """Wrap a shaped numpy array (entries converted to the chosen domain)."""
    array = np.asarray(array)
    if exact:
        return Tensor(exact_array(array), exact=True)
    return Tensor(array.astype(complex), exact=False)


def zeros(shape: Sequence[int], exact: bool = False) -> Tensor:
    shape = tuple(shape)
    if exact:
        return Tensor(exact_array(np.zeros(shape, dtype=int)), exact=True)
    return Tensor(np.zeros(shape, dtype=complex), exact=False)


def basis_tensor(bits: str, exact: bool = True) -> Tensor:
    """``e_{bits}`` in (C^2)^{⊗k}; e.g. ``basis_tensor("011")``."""
    arr = np.zeros((2,) * len(bits), dtype=int)
    arr[tuple(int(b) for b in bits)] = 1
    return from_array(arr, exact=exact)


def _check_axes(order: int, row_axes: Sequence[int]) -> tuple[list[int], list[int]]:
    rows = [int(a) for a in row_axes]
    if not rows or len(rows) >= order:
        raise TensorError("row_axes must be a nonempty proper subset of the axes")
    if len(set(rows)) != len(rows) or any(a < 0 or a >= order for a in rows):
        raise TensorError(f"invalid axes {row_axes} for order {order}")
    cols = [a for a in range(order) if a not in rows]
    return rows, cols


def matricize(t: Tensor, row_axes: Sequence[int]) -> np.ndarray:
    """Flatten ``t`` into a matrix.

    Rows are multi-indices over ``row_axes`` (row-major in the given order),
    columns are multi-indices over the remaining axes in ascending order.
    Returns an object array for exact tensors, ``complex128`` otherwise.
    """
    rows, cols = _check_axes(t.order, row_axes)
    arr = np.transpose(t.array, rows + cols)
    nr = math.prod(t.shape[a] for a in rows)
    return arr.reshape(nr, -1).copy()


def unmatricize(m: np.ndarray, shape: Sequence[int], row_axes: Sequence[int],
                exact: bool | None = None) -> Tensor:
    """Inverse of :func:`matricize`."""
    shape = tuple(shape)
    rows, cols = _check_axes(len(shape), row_axes)
    m = np.asarray(m)
    if exact is None:
        exact = m.dtype == object
    arr = m.reshape([shape[a] for a in rows + cols])
    arr = np.transpose(arr, np.argsort(rows + cols))
    return from_array(arr, exact=exact)


def _vector(v, exact: bool) -> np.ndarray:
    v = np.asarray(v)
    if exact:
        if v.dtype != object and not np.issubdtype(v.dtype, np.integer):
            raise TensorError("exact tensors contract only with exact vectors")
        return exact_array(v)
    return to_complex_array(v)


def slice_axis(t: Tensor, axis: int, v) -> Tensor:
    """Contract axis ``axis`` of ``t`` against ``v`` (bilinear, no conjugation).

    The result has order ``k - 1`` and depends linearly on ``v``.
    """
    if t.order < 2:
        raise TensorError("cannot slice an order-1 tensor")
    if not 0 <= axis < t.order:
        raise TensorError(f"invalid axis {axis}")
    v = _vector(v, t.exact)
    if v.shape != (t.shape[axis],):
        raise TensorError(f"vector of length {v.shape} against axis of size {t.shape[axis]}")
    return Tensor(np.tensordot(v, t.array, axes=([0], [axis])), t.exact)


def outer(factors: Sequence) -> np.ndarray:
    """Plain outer product array of a list of vectors."""
    out = np.asarray(factors[0])
    for f in factors[1:]:
        out = np.multiply.outer(out, np.asarray(f))
    return out


def pure(factors: Sequence, exact: bool | None = None) -> Tensor:
    """The pure tensor ``f1 ⊗ f2 ⊗ ... ⊗ fk``."""
    if not factors:
        raise TensorError("need at least one factor")
    if exact is None:
        exact = all(np.asarray(f).dtype == object or np.issubdtype(np.asarray(f).dtype, np.integer)
                    for f in factors)
    vecs = [_vector(f, exact) for f in factors]
    for v in vecs:
        if v.ndim != 1 or v.size == 0:
            raise TensorError("factors must be nonempty vectors")
        if not np.any(v != 0):
            raise TensorError("zero factor")
    return Tensor(outer(vecs), exact)


def apply_local(t: Tensor, mats: Sequence) -> Tensor:
    """Apply one matrix per axis: ``(A1 ⊗ ... ⊗ Ak) t``.

    ``None`` entries leave an axis untouched.
    """
    if len(mats) != t.order:
        raise TensorError("need one matrix per axis")
    arr = t.array
    for axis, m in enumerate(mats):
        if m is None:
            continue
        m = np.asarray(m)
        m = exact_array(m) if t.exact else to_complex_array(m)
        arr = np.moveaxis(np.tensordot(m, arr, axes=([1], [axis])), 0, axis)
    return Tensor(arr, t.exact)


def frobenius_distance(a: Tensor, b: Tensor) -> float:
    """``sqrt(sum |a - b|^2)``; exactly 0.0 iff equal in the exact domain."""
    if a.shape != b.shape:
        raise TensorError(f"shape mismatch {a.shape} vs {b.shape}")
    if a.exact and b.exact:
        d2 = sum((v.abs2() for v in (a.array - b.array).ravel()), Fraction(0))
        return math.sqrt(d2)
    return float(np.linalg.norm(a.complex_array() - b.complex_array()))


@dataclass(frozen=True)
class Decomposition:
    """``u = sum_j weight_j * (f_j1 ⊗ ... ⊗ f_jk)``.

    ``terms`` is a tuple of ``(weight, factors)`` with ``factors`` a tuple of
    1-d arrays, one per axis.
    """

    terms: tuple
    certified: bool = True

    def __post_init__(self):
        terms = tuple((w, tuple(np.asarray(f) for f in fs)) for w, fs in self.terms)
        for _, fs in terms:
            for f in fs:
                if not np.any(f != 0):
                    raise TensorError("decomposition factor is zero")
        object.__setattr__(self, "terms", terms)

    def __len__(self):
        return len(self.terms)

    @property
    def exact(self) -> bool:
        return all(isinstance(w, GaussianRational) and all(f.dtype == object for f in fs)
                   for w, fs in self.terms)

    def reconstruct(self, shape: Sequence[int] | None = None) -> Tensor:
        if not self.terms:
            if shape is None:
                raise TensorError("empty decomposition needs an explicit shape")
            return zeros(shape)
        exact = self.exact
        acc = None
        for w, fs in self.terms:
            term = outer(fs) * w if exact else outer([to_complex_array(f) for f in fs]) * complex(w)
            acc = term if acc is None else acc + term
        return Tensor(acc, exact)

    def max_weight(self) -> float:
        return max((abs(complex(w)) * math.prod(float(np.linalg.norm(to_complex_array(f)))
                                                for f in fs)
                    for w, fs in self.terms), default=0.0)


def _fmt_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def to_json_obj(t: Tensor) -> dict:
    """JSON-ready dict in the documented tensor wire format."""
    if t.exact:
        return {"shape": list(t.shape),
                "entries": [{"re": _fmt_fraction(v.re), "im": _fmt_fraction(v.im)}
                            for v in t.array.ravel()]}
    flat = t.array.ravel()
    return {"shape": list(t.shape),
            "re": [float(v.real) for v in flat],
            "im": [float(v.imag) for v in flat]}


def from_json_obj(obj: dict) -> Tensor:
    """Parse either wire format; raises :class:`TensorError` when malformed."""
    try:
        shape = [int(d) for d in obj["shape"]]
        if "entries" in obj:
            vals = [GaussianRational(Fraction(str(e.get("re", "0"))), Fraction(str(e.get("im", "0"))))
                    for e in obj["entries"]]
            return tensor_new(shape, vals, exact=True)
        re = [float(x) for x in obj["re"]]
        im = [float(x) for x in obj.get("im", [0.0] * len(re))]
        if len(re) != len(im):
            raise TensorError("re/im length mismatch")
        return tensor_new(shape, [complex(a, b) for a, b in zip(re, im)], exact=False)
    except TensorError:
        raise
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise TensorError(f"malformed tensor JSON: {exc}") from exc


def dumps(t: Tensor) -> str:
    return json.dumps(to_json_obj(t))


def loads(text: str) -> Tensor:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TensorError(f"malformed tensor JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise TensorError("tensor JSON must be an object")
    return from_json_obj(obj)
