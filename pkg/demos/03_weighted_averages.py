"""
Weighted averages over [N, 2N)
==============================

A is the mean of the weights a_n.  S_P weights each n by the number of primes
in n + H, and S_lambda keeps the n with lambda(n + r) = -1.  Each average is
compared with its predicted main term.
"""

from gpysieve.averages import discard_slope, empirical_averages, second_moment_ratio, prime_moment_ratio
from gpysieve.tuples import H0, KTuple
from gpysieve.weights import WeightParams

H2 = KTuple.parse("{0,2}")

# %%
# Second moment of Lambda_R against S(H) (log R)^(k+2l)/(k+2l)!.  The ratio
# creeps towards 1 as N grows.
for N in (10**5, 10**6):
    R = N**0.25
    print(f"N={N:>8}: second moment ratio {second_moment_ratio(N, H2, R):.4f}, "
          f"prime-weighted ratio {prime_moment_ratio(N, H2, R):.4f}")

# %%
# S_lambda / A sits at 1/2: lambda(n + r) is blind to the structure the
# weights impose on n + H.
N = 10**6
rep = empirical_averages(N, WeightParams(H0, N**0.25, u=1.0), r=8, eta=0.2)
print(f"A = {rep.A_emp:.3f} (predicted {rep.A_pred:.3f})")
print(f"S_P = {rep.S_P_emp:.3f} (predicted {rep.S_P_pred:.3f})")
print(f"S_lambda / A = {rep.S_lambda_emp / rep.A_emp:.4f}")
print(f"sign of S - A: {rep.to_dict()['S_minus_A_sign']:+d}  (reported, not asserted)")

# %%
# The mass on n whose P_H(n) has a factor <= R^eta is a step function of eta.
# Its largest slope ratio(eta)/eta is attained at eta = log p / log R.
s = discard_slope(N, WeightParams(H0, N**0.25, u=1.0))
for eta, ratio in zip(s.jump_etas, s.jump_ratios):
    print(f"eta={eta:.3f}: discarded share {ratio:.3f}")
print(f"sup ratio/eta = {s.C:.4f}")
