"""
How many shifts d are good?
===========================

Tuples built from integers coprime to the primorial P are automatically
admissible.  Counting how often one difference is produced gives a lower
density for the set of good shifts, as an exact fraction.
"""

from gpysieve.densities import density_bounds, multiplicity_audit

# %%
for k in range(2, 10):
    rep = density_bounds(k)
    print(f"k={k}: P={rep.P:>3} phi(P)={rep.phi_P:>2}  d0 >= {str(rep.d0_bound):>6}  d1 >= {rep.d1_bound}")

# %%
# Brute force on a small universe: every k-subset of {m <= U : (m, P) = 1}.
for k, U in ((2, 12), (3, 30), (4, 30)):
    a = multiplicity_audit(k, U)
    print(f"k={k}, U={a.U}: M={a.M}, {a.subsets} subsets, {a.distinct_d1} distinct differences "
          f"(need >= {a.predicted_d1}), max multiplicity {a.max_multiplicity_d1} <= {a.multiplicity_bound_d1}: ok={a.ok}")
