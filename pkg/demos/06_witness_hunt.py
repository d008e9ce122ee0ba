"""
Looking for the configurations directly
=======================================

For each even shift d we count primes p <= N with lambda(p + d) = -1.  Under
side conditions, p + d must also have no prime factor below p^c.  Finite
counts cannot prove infinitude; they only show the pattern is common.
"""

from gpysieve.tuples import H0, H1, KTuple
from gpysieve.witness import hunt_window, shape_check, tally_lambda_shifts

N = 10**6

# %%
tallies = tally_lambda_shifts(N, range(2, 31, 2), c_exponent=0.05)
for d, t in tallies.items():
    print(f"d={d:>2}: {t.count:>6} primes with lambda(p+d) = -1; "
          f"rough p+d split by Omega: {dict(t.by_b)}")

# %%
# Windows [N, 2N) with two primes in n + H0, or one prime plus lambda(n + 8) = -1.
rep = hunt_window(N, H0, 8)
print(f"two primes: {rep.two_prime_count}, prime + lambda: {rep.prime_plus_lambda_count}, "
      f"either: {rep.either_count}")

# %%
# Counts times log^k N / N hold steady across scales.
shape = shape_check(KTuple.parse("{0,2}"), [10**4, 10**5, 10**6])
print("normalised counts:", [round(x, 3) for x in shape.ratios], "min/max", round(shape.min_over_max, 3))
