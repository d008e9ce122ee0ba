"""
Admissible tuples and their singular series
===========================================

A tuple H is admissible when it misses at least one residue class modulo
every prime.  Only primes up to k = |H| can be fully covered, so the check is
finite.
"""

from gpysieve.tuples import (
    CATALOG,
    KTuple,
    is_admissible,
    min_diameter_search,
    residue_count,
    roots_mod,
    singular_series,
)

# %%
# {0, 2, 4} hits 0, 2 and 1 modulo 3, so n, n + 2, n + 4 always contain a
# multiple of 3.
for text in ("{0,2,4}", "{0,2,6}", "{0,4,6,10,12,16}"):
    H = KTuple.parse(text)
    counts = {p: residue_count(H, p) for p in (2, 3, 5)}
    print(f"{text:>22}  nu_p={counts}  admissible={is_admissible(H)}")

# %%
# The narrowest admissible k-tuples.  The search fixes h_1 = 0 and prunes any
# partial tuple that already covers every class modulo some prime <= k.
for k in range(2, 10):
    D, witness = min_diameter_search(k)
    print(f"k={k}: diameter {D:>2}, e.g. {witness}   (catalog uses {CATALOG[k]})")

# %%
# The singular series is an Euler product.  Large primes have nu_p = k and a
# local factor within k(k-1)/p^2 of 1, which gives a rigorous tail bound.
for text in ("{0}", "{0,2}", "{0,2,6}", "{0,4,6,10,12,16}"):
    v = singular_series(text)
    print(f"S({text}) = {v.value:.9f}  (rel. error <= {v.relative_error_bound:.1e}, P = {v.truncation_prime})")

# %%
# Roots of P_H(n) = prod (n + h) modulo a squarefree d combine by CRT, so
# their number is multiplicative in d.
H = KTuple.parse("{0,4}")
print("roots mod 3:", roots_mod(H, 3), " mod 5:", roots_mod(H, 5), " mod 15:", roots_mod(H, 15))
