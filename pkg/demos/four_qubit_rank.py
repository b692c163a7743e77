"""Four qubits: decompositions with at most four terms and rank certificates.

Run: python3 demos/four_qubit_rank.py
"""

from collections import Counter

import numpy as np

from entrank import Tensor, decompose4, in_s3_closure, rank4, s2_closure_necessary
from entrank.invariants import essential_deltas
from entrank.qubit4 import stabilizer_dimension, s3_closure_dimension
from entrank.states import builtin_state

rng = np.random.default_rng(0)


def gauss(shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


# %% random tensors: nonzero deltas, hence rank exactly 4
counts = Counter()
for _ in range(200):
    cert = rank4(Tensor(gauss((2,) * 4), exact=False))
    counts[(cert.rank, cert.exact)] += 1
print("random 4-qubit tensors (rank, exact):", dict(counts))

# %% the three essential deltas obey one linear relation
t = Tensor(gauss((2,) * 4), exact=False)
d = essential_deltas(t)
print("D1234 - D1324 + D1423 =", abs(d["1234"] - d["1324"] + d["1423"]) / t.norm() ** 4, "(relative)")

# %% GHZ4 and low-rank sums
ghz4 = builtin_state("ghz4")
cert = rank4(ghz4)
print("\nGHZ4: rank", cert.rank, "exact", cert.exact, "lower bound from:", cert.lower_evidence)


def pure4():
    return np.einsum("a,b,c,d->abcd", *[gauss(2) for _ in range(4)])


for k in (2, 3):
    t = Tensor(sum(pure4() for _ in range(k)), exact=False)
    cert = rank4(t)
    print(f"sum of {k} pure: in S3 closure {in_s3_closure(t)}, S2 test {s2_closure_necessary(t)}, "
          f"rank bound [{cert.lower}, {cert.upper}]")

# %% the closure of the rank-3 locus has dimension 13
k = stabilizer_dimension(1, 1)
print("\nstabilizer dimension at (1, 1):", k, " closure dimension:", s3_closure_dimension())

# %% one explicit decomposition
d = decompose4(Tensor(gauss((2,) * 4), exact=False))
print("\nexplicit decomposition:", len(d), "terms, certified", d.certified)
