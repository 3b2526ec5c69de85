"""
Enclosing beta_n and gamma_n
============================

beta_n solves x + sum_{m>=2} sqrt(N_m(n)) x^m = lambda/2, and is a certified
lower bound for the lambda-Bohr radius of the n-dimensional polydisc. gamma_n
uses Sidon constants in place of sqrt(N_m(n)); with no information about them
the enclosure collapses to [beta_n, lambda/(lambda+2)].
"""

import math

from bohrradius import CoefficientBounds, SeriesSpec, SpaceSpec, bohr_bounds_report, solve_root

# closed form for n=1
for lam in (1.0, 1.5, 2.0):
    print(lam, solve_root(SeriesSpec(1, lam)), lam / (lam + 2))

###############################################################################
# beta_n against the reference curve sqrt(log n / n)

for n in (2, 5, 10, 20, 40):
    b = solve_root(SeriesSpec(n), 1e-12)
    print(f"n={n:3d}  beta=[{b.lo:.12f}, {b.hi:.12f}]  ratio={b.lo / math.sqrt(math.log(n) / n):.3f}")

###############################################################################
# Full report with the trivial coefficient table

rep = bohr_bounds_report(3, 1.0, SpaceSpec(3), CoefficientBounds.trivial(3, 4))
print(rep.beta, rep.gamma_lo, rep.gamma_hi, rep.Gamma, rep.flags)
