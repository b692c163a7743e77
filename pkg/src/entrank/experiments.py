"""Seeded batch experiments over random complex Gaussian tensors."""

from __future__ import annotations

from collections import Counter

import numpy as np

from .classify3 import classify3, decompose3, slice_polynomial
from .invariants import essential_deltas
from .qubit4 import decompose4
from .tensor import frobenius_distance, from_array


def random_tensor(rng: np.random.Generator, order: int):
    shape = (2,) * order
    return from_array(rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


def sample(space: str, n: int, seed: int = 0) -> dict:
    """Classify/decompose ``n`` random tensors and tabulate the results.

    ``space`` is ``"3q"`` or ``"4q"``. The report holds case (or term-count)
    frequencies, the worst relative reconstruction error and the worst
    violation of an invariant identity: ``D = disc(P)`` for 3 qubits, the
    three-term delta relation for 4 qubits (both relative to ``|t|^4``).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if space not in ("3q", "4q"):
        raise ValueError(f"unknown space {space!r}")
    rng = np.random.default_rng(seed)
    counts: Counter = Counter()
    max_residual = 0.0
    max_violation = 0.0
    certified = 0
    for _ in range(n):
        if space == "3q":
            t = random_tensor(rng, 3)
            c = classify3(t)
            d = decompose3(t, c)
            counts[c.case] += 1
            if len(d) != c.rank:
                counts["term-count-mismatch"] += 1
            disc = slice_polynomial(t).discriminant()
            violation = abs(complex(c.hyperdet) - complex(disc)) / t.norm() ** 4
        else:
            t = random_tensor(rng, 4)
            d = decompose4(t)
            counts[f"{len(d)} terms"] += 1
            certified += d.certified
            dl = essential_deltas(t)
            violation = abs(dl["1234"] - dl["1324"] + dl["1423"]) / t.norm() ** 4
        max_residual = max(max_residual, frobenius_distance(d.reconstruct(), t) / t.norm())
        max_violation = max(max_violation, violation)
    report = {"space": space, "n": n, "seed": seed,
              "frequencies": dict(sorted(counts.items())),
              "max_residual": max_residual,
              "max_identity_violation": max_violation}
    if space == "4q":
        report["certified"] = certified
    return report
