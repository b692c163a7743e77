"""Builtin example states (exact), including the 2x2 matrix multiplication
tensor and its seven-term decomposition shipped as data."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

import numpy as np

from .scalars import GaussianRational, exact_array
from .tensor import Decomposition, Tensor, TensorError, basis_tensor, from_array


def _sum(*bits: str, signs=None) -> Tensor:
    signs = signs or [1] * len(bits)
    out = None
    for b, s in zip(bits, signs):
        term = s * basis_tensor(b)
        out = term if out is None else out + term
    return out


def matmul_tensor(n: int = 2) -> Tensor:
    """``T[(i,j), (j,k), (i,k)] = 1``: coefficients of ``A B`` as bilinear forms."""
    arr = np.zeros((n * n,) * 3, dtype=int)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                arr[i * n + j, j * n + k, i * n + k] = 1
    return from_array(arr, exact=True)


def _load_decomposition(name: str) -> Decomposition:
    raw = resources.files("entrank").joinpath("data", f"{name}.json").read_text()
    obj = json.loads(raw)
    terms = tuple((GaussianRational.coerce(t["weight"]),
                   tuple(exact_array(f) for f in t["factors"]))
                  for t in obj["terms"])
    return Decomposition(terms, certified=True)


@lru_cache(maxsize=None)
def strassen_decomposition() -> Decomposition:
    """Seven-term decomposition of the 2x2 matrix multiplication tensor.

    Checked for exact reconstruction when loaded.
    """
    d = _load_decomposition("strassen_decomp")
    if len(d) != 7 or d.reconstruct() != matmul_tensor(2):
        raise TensorError("bundled Strassen decomposition does not reconstruct the tensor")
    return d


_STATES = {
    "ghz3": lambda: _sum("000", "111"),
    "w3": lambda: _sum("001", "010", "100"),
    "epr": lambda: _sum("00", "11"),
    "paper_rank3": lambda: _sum("000", "110", "101"),
    # multiplication of complex numbers as a real bilinear map R^2 x R^2 -> R^2
    "real_vs_complex": lambda: _sum("000", "011", "101", "110", signs=[1, -1, 1, 1]),
    "ghz4": lambda: _sum("0000", "1111"),
    "strassen222": lambda: matmul_tensor(2),
}

STATE_NAMES = tuple(_STATES)
DECOMPOSITION_NAMES = ("strassen_decomp",)


def builtin_state(name: str) -> Tensor:
    try:
        return _STATES[name]()
    except KeyError:
        raise KeyError(f"unknown state {name!r}; choose from {', '.join(STATE_NAMES)}") from None


def builtin_decomposition(name: str) -> Decomposition:
    if name == "strassen_decomp":
        return strassen_decomposition()
    raise KeyError(f"unknown decomposition {name!r}")
