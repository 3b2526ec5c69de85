"""
Estimating Sidon constants
==========================

S(m, n) is the best constant in ||Q||_1 <= S ||Q||_inf over m-homogeneous Q.
The lower bound comes from an explicit witness polynomial whose sup norm is
certified on a phase mesh; the upper bound is sqrt(N_m(n)), or a dual-kernel
certificate for m=2, n=2.
"""

import math

from bohrradius import SpaceSpec, build_coefficient_table, gamma_capital, sidon_bounds
from bohrradius.radii import solve_gamma_bounds, solve_root, SeriesSpec

est = sidon_bounds(2, 2, SpaceSpec(2), budget=4000, seed=0)
print(f"S(2,2) in [{est.lower:.4f}, {est.upper:.4f}]  (sqrt 3 = {math.sqrt(3):.4f})  method={est.method}")
print("witness coefficients:", est.witness.coefficients.ravel().round(4))

###############################################################################
# A table for n=2 tightens gamma_2 strictly above beta_2

table = build_coefficient_table(2, 3, SpaceSpec(2), budget=2000, seed=0)
print(table.per_m, table.provenance)
g_lo, g_hi = solve_gamma_bounds(2, 1.0, table)
print("beta_2 ", solve_root(SeriesSpec(2)))
print("gamma_2", g_lo.lo, g_hi.hi)
print("Gamma_2", gamma_capital(table))
