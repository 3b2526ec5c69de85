"""
Checking the coefficient lemmas
===============================

Two inequalities are tested on explicit instances: a Wiener-type bound on
homogeneous parts of a function bounded by one, and strictness of the l2
aggregate against the torus orbit in the presence of two corner terms.
"""

import math

import numpy as np

from bohrradius import HomogeneousPolynomial, SpaceSpec, TruncatedPowerSeries
from bohrradius import corner_strictness_check, moebius_family, wiener_bound_check

# equality case in degree one
v = wiener_bound_check(moebius_family(0.6, 60), 1, 1.0)
print("Moebius a=0.6:", v.kind, v.margin)

###############################################################################
# Hilbert-space valued counterexample: f(z) = (1/sqrt 2, z/sqrt 2)

s = 1 / math.sqrt(2)
f = TruncatedPowerSeries.from_dict(1, SpaceSpec(1, np.inf, 2), {(0,): [s, 0], (1,): [0, s]}, declared_sup=1.0)
v = wiener_bound_check(f, 1, 1.0)
print("vector-valued:", v.kind, v.meta)

###############################################################################
# Corner strictness for z1^3 + z2^3 at (t, t)

Q = HomogeneousPolynomial.from_dict(3, SpaceSpec(2), {(3, 0): 1, (0, 3): 1})
v = corner_strictness_check(Q, (0.5, 0.5))
print("corner:", v.kind, v.margin, (2 - math.sqrt(2)) * 0.5**3)
