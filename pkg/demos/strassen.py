"""Seven multiplications suffice for a 2x2 matrix product.

The matrix-multiplication tensor lives in a 4x4x4 space; a dimension count
only forces rank >= 64/10, i.e. 7. Run: python3 demos/strassen.py
"""

import math

import numpy as np

from entrank import rank_lower_bound, strassen_decomposition, verify_decomposition
from entrank.states import matmul_tensor
from entrank.scalars import to_complex_array

t = matmul_tensor()
d = strassen_decomposition()
print("entries equal to 1:", sum(1 for x in t.entries if x != 0), "of", len(t.entries))
print("exact reconstruction from", len(d), "products:", verify_decomposition(t, d, None))
print("dimension-count bound:", rank_lower_bound([4, 4, 4]),
      "-> at least", math.ceil(rank_lower_bound([4, 4, 4])))

# %% use the decomposition to multiply two matrices with 7 products
rng = np.random.default_rng(0)
a, b = rng.integers(-5, 6, (2, 2)), rng.integers(-5, 6, (2, 2))
c = np.zeros(4)
for w, (fa, fb, fc) in d.terms:
    m = (to_complex_array(fa).real @ a.ravel()) * (to_complex_array(fb).real @ b.ravel())
    c += complex(w).real * m * to_complex_array(fc).real
print("A @ B    =", (a @ b).ravel().tolist())
print("7 products:", c.astype(int).tolist())
