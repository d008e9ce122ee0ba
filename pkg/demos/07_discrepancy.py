"""
Liouville and primes in progressions
====================================

E_M(q) is the largest partial-sum excursion of lambda inside one residue class
modulo q.  Summed over q <= sqrt(N) and divided by N sqrt(N), it shrinks as N
grows.
"""

import math

from gpysieve.averages import averaged_discrepancy, lambda_discrepancies, prime_discrepancy

# %%
E = lambda_discrepancies(10**6, [1, 2, 3, 10, 100, 1000])
print("E_{10^6}(q) for q = 1, 2, 3, 10, 100, 1000:", E.tolist())

# %%
for N in (10**4, 10**5, 10**6):
    Q = math.isqrt(N)
    total = averaged_discrepancy(N, Q)
    print(f"N={N:>8}: sum_(q<={Q}) E_N(q) = {total:>9.0f}, normalised {total / (N * Q):.3e}")

# %%
# The prime version uses log p weights against y / phi(q).
for q in (3, 4, 7):
    print(f"q={q}: max deviation for primes <= 10^5 = {prime_discrepancy(10**5, q):.2f}")
