"""W is a limit of rank-2 tensors but has rank 3.

ALS with two terms drives the residual toward zero only by letting two
terms grow without bound and cancel. Run: python3 demos/border_rank_w.py
"""

from entrank import als_fit, builtin_state, classify3, pure
from entrank.tensor import frobenius_distance

w = builtin_state("w3")
print("classify3 rank of W:", classify3(w).rank)

# %% explicit sequence: (1/eps) [ (e0 + eps e1)^{x3} - e0^{x3} ] -> W
for eps in (1e-1, 1e-2, 1e-3, 1e-4):
    a = pure([[1, eps]] * 3, exact=False) * (1 / eps)
    b = pure([[1, 0]] * 3, exact=False) * (-1 / eps)
    print(f"eps={eps:.0e}  distance to W {frobenius_distance(a + b, w):.2e}  term weight {1 / eps:.0e}")

# %% what ALS finds on its own
for iters in (200, 1000, 3000):
    rep = als_fit(w, 2, restarts=5, max_iters=iters)
    print(f"ALS r=2, {iters:5d} iters: residual {rep.residual:.2e}  max factor norm "
          f"{rep.max_factor_norm:8.1f}  blow-up {rep.blowup}")

rep = als_fit(w, 3, restarts=5, max_iters=500)
print(f"ALS r=3: residual {rep.residual:.2e}  max factor norm {rep.max_factor_norm:.2f}")
