"""Certified bounds for multidimensional Bohr radii of finite dimensional Banach spaces.

The package computes two-sided enclosures of the roots ``beta_n`` and
``gamma_n`` of the power-series equations that bound the Bohr radius of
``B_{l^n_q}`` with values in ``X = l^d_p``, estimates the vector-valued Sidon
constants feeding those equations, and checks the associated norm
inequalities on explicit polynomials.
"""

from bohrradius.intervals import BoundInterval
from bohrradius.multiindex import count_multi_indices, enumerate_indices, monomial_eval
from bohrradius.polynorms import (
    HomogeneousPolynomial,
    TruncatedPowerSeries,
    coefficient_majorant,
    evaluate,
    norm_one,
    norm_sup_certified,
    norm_sup_heuristic,
    norm_two,
)
from bohrradius.radii import (
    SeriesSpec,
    asymptotic_reference,
    bohr_bounds_report,
    eval_series,
    solve_gamma_bounds,
    solve_root,
)
from bohrradius.sidon import (
    CoefficientBounds,
    SidonEstimate,
    build_coefficient_table,
    chi_mon,
    gamma_capital,
    homogeneous_bohr_radius,
    sidon_bounds,
)
from bohrradius.spaces import SpaceSpec, dual_exponent, sample_sphere, torus_orbit, vector_norm
from bohrradius.verify import (
    Verdict,
    check_bohr_sample,
    corner_strictness_check,
    moebius_family,
    wiener_bound_check,
)

__version__ = "0.1.0"

__all__ = [
    "BoundInterval",
    "CoefficientBounds",
    "HomogeneousPolynomial",
    "SeriesSpec",
    "SidonEstimate",
    "SpaceSpec",
    "TruncatedPowerSeries",
    "Verdict",
    "asymptotic_reference",
    "bohr_bounds_report",
    "build_coefficient_table",
    "check_bohr_sample",
    "chi_mon",
    "coefficient_majorant",
    "corner_strictness_check",
    "count_multi_indices",
    "dual_exponent",
    "enumerate_indices",
    "eval_series",
    "evaluate",
    "gamma_capital",
    "homogeneous_bohr_radius",
    "moebius_family",
    "monomial_eval",
    "norm_one",
    "norm_sup_certified",
    "norm_sup_heuristic",
    "norm_two",
    "sample_sphere",
    "sidon_bounds",
    "solve_gamma_bounds",
    "solve_root",
    "torus_orbit",
    "vector_norm",
    "wiener_bound_check",
]
