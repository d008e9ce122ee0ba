"""
Truncated divisor-sum weights
=============================

Lambda_R(n; H, l) sums mu(d) log(R/d)^(k+l) / (k+l)! over squarefree
d <= R dividing P_H(n).  There are two evaluation paths: a per-n divisor
walk, and a batch pass that loops over d and adds each term along the
residue classes of P_H modulo d.
"""

import math
import time

import numpy as np

from gpysieve.arith import factor_segment
from gpysieve.tuples import KTuple
from gpysieve.weights import WeightParams, batch_lambda_window, batch_weight_a, lambda_R

H = KTuple.parse("{0,2}")
R = 50.0

# %%
# Per-n evaluation needs the factorization of every n + h.
seg = factor_segment(2, 200)
for n in (1, 11, 17, 29, 30):
    print(f"Lambda_R({n:>2}) = {lambda_R(n, H, 0, R, seg):+.6f}")
print("top value (log R)^2/2 =", math.log(R) ** 2 / 2)

# %%
# The batch path over a window of 10^5 integers, checked against per-n values.
N, w = 10**5, 10**5
t0 = time.perf_counter()
batch = batch_lambda_window(N, w, H, 0, R)
t_batch = time.perf_counter() - t0
seg = factor_segment(N, w + 2)
sample = range(N, N + w, 97)
per_n = np.array([lambda_R(n, H, 0, R, seg) for n in sample])
print(f"batch {t_batch:.3f}s; max |batch - per-n| on sample = {np.max(np.abs(batch[::97] - per_n)):.2e}")

# %%
# The combined weight a_n = (Lambda_0 + u (k+1)/log R * Lambda_1)^2 is a square.
params = WeightParams(H, R, u=1.0)
a = batch_weight_a(N, w, params)
print(f"mean a_n over [N, N + w): {a.mean():.4f}; min {a.min():.2e}")
