"""Exact Gaussian-rational scalars.

Values of Q(i) stored as a pair of :class:`fractions.Fraction`. They mix with
``int`` and ``Fraction`` operands and can live in numpy ``object`` arrays, so
``np.dot``/``np.tensordot`` work on them unchanged.
"""

from __future__ import annotations

import numbers
from fractions import Fraction

import numpy as np


class GaussianRational:
    """An element ``re + i*im`` of Q(i) with arbitrary-precision parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (numbers.Rational, str)):
            return cls(Fraction(value))
        raise TypeError(f"cannot use {value!r} as an exact scalar")

    @staticmethod
    def _other(value):
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, numbers.Rational):
            return GaussianRational(value)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        n = o.abs2()
        if n == 0:
            raise ZeroDivisionError("division by exact zero")
        return self * o.conjugate() * GaussianRational(1 / n)

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (1 / self) ** (-n)
        result, base = GaussianRational(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Squared modulus, exact."""
        return self.re * self.re + self.im * self.im

    def __abs__(self) -> float:
        return abs(complex(self))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, complex):
            return complex(self) == other
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def is_real(self) -> bool:
        return self.im == 0

    def __repr__(self):
        if self.im == 0:
            return f"GaussianRational({self.re})"
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)


def exact_array(values) -> np.ndarray:
    """Object array of :class:`GaussianRational` built from rationals or strings."""
    arr = np.asarray(values, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = GaussianRational.coerce(v)
    return out


def to_complex_array(arr: np.ndarray) -> np.ndarray:
    if arr.dtype == object:
        return np.vectorize(complex, otypes=[complex])(arr) if arr.size else arr.astype(complex)
    return np.asarray(arr, dtype=complex)


def is_zero(value, tol: float | None = None) -> bool:
    """Exact zero test for exact scalars; ``abs(value) <= tol`` otherwise."""
    if isinstance(value, GaussianRational):
        return not value
    if tol is None:
        raise ValueError("approximate zero test needs an explicit tolerance")
    return abs(value) <= tol
