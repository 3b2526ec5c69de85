"""
Homogeneous polynomials and their norms
=======================================

A vector-valued m-homogeneous polynomial on C^n is stored as one coefficient
vector per multi-index. Three norms matter here: the sup norm over the unit
ball, the "absolute" norm sup_z sum ||x_alpha z^alpha||, and its l2 variant.
"""

import numpy as np

from bohrradius import HomogeneousPolynomial, SpaceSpec, count_multi_indices, enumerate_indices
from bohrradius import norm_one, norm_sup_certified, norm_sup_heuristic, norm_two

# multi-indices of degree 2 in 2 variables, in descending lexicographic order
print(enumerate_indices(2, 2), count_multi_indices(2, 2))

###############################################################################
# A polynomial on the bidisc (q = inf) with scalar values

spec = SpaceSpec(2)                      # n=2, q=inf, d=1
Q = HomogeneousPolynomial.from_dict(2, spec, {(2, 0): 1, (1, 1): 1, (0, 2): -1})
print("||Q||_1   ", norm_one(Q))
print("||Q||_2   ", norm_two(Q))
print("||Q||_inf ", norm_sup_certified(Q, mesh=64))

###############################################################################
# The heuristic sup norm is a lower bound; the certified one is an enclosure.

value, witness = norm_sup_heuristic(Q, restarts=8, seed=0)
print("heuristic", value, "at", np.round(witness, 4))

###############################################################################
# Vector-valued example into l^2_inf: the absolute norm can exceed the sup norm
# even in degree one.

Qv = HomogeneousPolynomial(1, SpaceSpec(2, np.inf, 2, np.inf), np.eye(2, dtype=complex))
print("vector-valued: ||Q||_1 =", norm_one(Qv).lo, " ||Q||_inf <=", norm_sup_certified(Qv).hi)
