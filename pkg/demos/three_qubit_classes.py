"""Three qubits: the four rank classes, their invariants and normal forms.

Run: python3 demos/three_qubit_classes.py
"""

import numpy as np

from entrank import Tensor, builtin_state, classify3, decompose3, normal_form3, pure, real_rank3
from entrank.invariants import hyperdet
from entrank.tensor import frobenius_distance

# %% landmark states
# GHZ has a nonzero hyperdeterminant and splits into two terms.
# W and e000+e110+e101 sit on D = 0 but lie in no biseparable locus: rank 3.
for name in ("ghz3", "w3", "paper_rank3", "real_vs_complex"):
    t = builtin_state(name)
    c = classify3(t)
    print(f"{name:16s} case={c.case:16s} rank={c.rank} D={c.hyperdet} deltas={c.deltas} "
          f"roots={c.roots.tag}")

# %% decompositions reconstruct the input
w = builtin_state("w3")
d = decompose3(w)
print("\nW as", len(d), "pure terms, error", frobenius_distance(d.reconstruct(), w))
for weight, fs in d.terms:
    print("  weight", complex(weight), " factors", [np.real_if_close(f).round(3).tolist() for f in fs])

# %% biseparable: a vector times an entangled pair
t = pure([[1, 0], [1, 0], [1, 0]]) + pure([[1, 0], [0, 1], [0, 1]])
c = classify3(t)
print("\ne0 x (e00 + e11):", c.case, "on axis", c.axis, "rank", c.rank)

# %% real versus complex rank
# the slice polynomial of this real tensor is x^2 + y^2 (up to sign): no real roots
rvc = builtin_state("real_vs_complex")
print("\nreal_vs_complex: D =", hyperdet(rvc), " complex rank", classify3(rvc).rank,
      " real rank", real_rank3(rvc))

# %% local-unitary normal form of a random state
rng = np.random.default_rng(0)
u = rng.standard_normal((2, 2, 2)) + 1j * rng.standard_normal((2, 2, 2))
nf = normal_form3(Tensor(u, exact=False))
print("\nrandom state normal form:", nf.case)
print("  params", {k: complex(np.round(v, 4)) if k == "z" else round(float(v), 4)
                   for k, v in nf.params.items()})
print("  constraint (should be 1):", round(nf.constraint(), 12))
unit = Tensor(u / np.linalg.norm(u), exact=False)
print("  reconstruction error:", frobenius_distance(nf.reconstruct(), unit))
