"""
When does the weighted inequality admit a u?
============================================

The argument needs c * theta * L(u) > Q(u), with c = k or c = k - 1 and L, Q
quadratics in u.  Everything here is exact rational arithmetic.
"""

from fractions import Fraction

from gpysieve.thresholds import constants_table, feasible_u_range, ratio_threshold, theta_threshold

# %%
# At theta = 1/2 the six-tuple works exactly for u > 4/7.
print("k=6, theta=1/2, c=k    :", feasible_u_range(6, Fraction(1, 2), "all-k"))
print("k=9, theta=1/2, c=k-1  :", feasible_u_range(9, Fraction(1, 2), "k-minus-1"))
print("k=2, theta=1/2, c=k    :", feasible_u_range(2, Fraction(1, 2), "all-k"))

# %%
# The smallest workable theta is where the discriminant in u vanishes.  A
# numerical minimisation of Q / (c L) reaches the same number.
for variant, ks in (("all-k", range(2, 7)), ("k-minus-1", range(3, 10))):
    for k in ks:
        exact = theta_threshold(k, variant)
        numeric, u_star = ratio_threshold(k, variant)
        print(f"{variant:>9} k={k}: theta > {exact:.6f}  (minimiser {numeric:.6f} at u = {u_star:.3f})")

# %%
# Gap constants that follow from each tuple, next to the stated values.
for row in constants_table():
    if row["constant"] in ("C3", "C4", "C5", "C6"):
        print(f"{row['constant']} k={row['k']}: {row['derived_value']:>2} (stated {row['paper_value']:>2}, {row['witness']})")
