"""Checks of the Bohr inequality, the Wiener-type coefficient bound and corner strictness on explicit instances.

Directionality is built into :class:`Verdict`: a heuristic sup norm (a
lower bound) can certify that the Bohr inequality *holds*, but only a
certified or exactly known sup norm can certify a *violation*.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Union

import numpy as np

from bohrradius.intervals import CERTIFIED, BoundInterval
from bohrradius.multiindex import corner_index
from bohrradius.polynorms import (
    HomogeneousPolynomial,
    TruncatedPowerSeries,
    _ascend_sup,
    coefficient_majorant,
    evaluate_many,
    norm_one,
    norm_sup_certified,
    norm_sup_heuristic,
)
from bohrradius.spaces import INF, SpaceSpec, sample_sphere, vector_norm, vector_norms

HOLDS, VIOLATED, INCONCLUSIVE = "holds", "violated", "inconclusive"
WIENER_SLACK = 1e-9
CORNER_THRESHOLD = 1e-9

SupMode = Union[str, tuple, float]


@dataclass(frozen=True)
class Verdict:
    kind: str
    margin: float
    certified: bool
    witness: Any = None
    meta: dict[str, Any] = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        if self.kind not in (HOLDS, VIOLATED, INCONCLUSIVE):
            raise ValueError(f"unknown verdict {self.kind!r}")


def moebius_family(a: float, M: int) -> TruncatedPowerSeries:
    """Taylor polynomial of degree ``M`` of ``(a - z) / (1 - a z)``, a disc automorphism.

    Coefficients ``c_0 = a`` and ``c_k = -(1 - a^2) a^(k-1)``; the
    discarded tail is majorised by ``(1 - a^2) a^M r^(M+1) / (1 - a r)``.
    """
    if not 0.0 < a < 1.0:
        raise ValueError(f"a must lie in (0, 1), got {a}")
    if M < 1:
        raise ValueError("truncation degree must be at least 1")
    spec = SpaceSpec(1, INF, 1)
    coeffs = {(0,): a}
    for k in range(1, M + 1):
        coeffs[(k,)] = -(1.0 - a * a) * a ** (k - 1)

    def tail(r: float, a=a, M=M) -> float:
        if r == 0.0:
            return 0.0
        value = (1.0 - a * a) * a**M * r ** (M + 1) / (1.0 - a * r)
        return math.nextafter(value * (1 + 1e-13), math.inf)

    return TruncatedPowerSeries.from_dict(M, spec, coeffs, tail_majorant=tail, declared_sup=1.0,
                                          label=f"moebius(a={a!r}, M={M})")


def _sup_interval(f: TruncatedPowerSeries | HomogeneousPolynomial, sup_mode: SupMode,
                  seed: int) -> tuple[BoundInterval, str]:
    """Enclosure of the sup norm of the function ``f`` stands for, and the mode name."""
    if isinstance(sup_mode, tuple):
        if len(sup_mode) != 2 or sup_mode[0] != "declared":
            raise ValueError(f"unknown sup mode {sup_mode!r}")
        sup_mode = float(sup_mode[1])
    if isinstance(sup_mode, (int, float)) and not isinstance(sup_mode, bool):
        if not sup_mode > 0:
            raise ValueError(f"declared sup norm must be positive, got {sup_mode}")
        return BoundInterval.exact(float(sup_mode)), "declared"
    tail = getattr(f, "tail_majorant", None)
    tail_at_one = 0.0 if tail is None else float(tail(1.0))
    if sup_mode == "heuristic":
        lo, _ = norm_sup_heuristic(f, restarts=8, seed=seed)
        lo = max(lo - tail_at_one, 0.0)
        return BoundInterval(lo, lo, "heuristic"), "heuristic"
    if sup_mode == "certified":
        sup = norm_sup_certified(f)
        return BoundInterval(max(sup.lo - tail_at_one, 0.0), sup.hi + tail_at_one, CERTIFIED), "certified"
    raise ValueError(f"unknown sup mode {sup_mode!r}")


def check_bohr_sample(f: TruncatedPowerSeries | HomogeneousPolynomial, r: float, lam: float,
                      sup_mode: SupMode = "heuristic", seed: int = 0) -> Verdict:
    """Compare ``sup sum ||x_alpha (r z)^alpha||`` with ``lam * ||f||_inf``.

    ``sup_mode`` is ``"heuristic"``, ``"certified"`` (``q = inf`` only) or
    ``("declared", value)``.  ``margin`` is ``lam * sup - majorant`` taken at
    the decisive ends of both intervals.
    """
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"r must lie in [0, 1], got {r}")
    if not lam >= 1.0:
        raise ValueError(f"lambda must be >= 1, got {lam}")
    sup, mode = _sup_interval(f, sup_mode, seed)
    majorant = coefficient_majorant(f, r)
    meta = {"majorant": majorant, "sup": sup, "mode": mode}
    if majorant.hi <= lam * sup.lo:
        return Verdict(HOLDS, lam * sup.lo - majorant.hi, majorant.certified, r, meta)
    if majorant.lo > lam * sup.hi:
        certified = mode != "heuristic" and majorant.certified
        return Verdict(VIOLATED, lam * sup.hi - majorant.lo, certified, r, meta)
    return Verdict(INCONCLUSIVE, lam * sup.lo - majorant.hi, False, r, meta)


def wiener_bound_check(f: TruncatedPowerSeries, m: int, sidon_upper: float, samples: int = 1000,
                       seed: int = 0) -> Verdict:
    """Test ``sup_z sum_{|alpha|=m} ||x_alpha z^alpha|| <= S (1 - ||x_0||^2)`` for ``||f||_inf <= 1``.

    The left side is maximised over sampled sphere points (plus the all-ones
    point for the polydisc and the optimiser's witness), so it is a lower
    bound of the true supremum: *holds* is non-refutation, *violated* is
    hard evidence that the inputs are inconsistent.
    """
    if m < 1:
        raise ValueError("m must be positive")
    if m > f.max_degree:
        raise ValueError(f"series has no slice of degree {m}")
    piece = f.slice(m)
    if piece.is_zero:
        raise ValueError(f"the degree-{m} slice is empty")
    sup_bound = f.declared_sup
    if sup_bound is None:
        if not math.isinf(f.spec.q):
            raise ValueError("a sup norm <= 1 must be declared for finite q")
        sup_bound = norm_sup_certified(f).hi
    if sup_bound > 1.0 + 1e-12:
        raise ValueError(f"f must satisfy ||f||_inf <= 1, got bound {sup_bound}")

    spec = f.spec
    Z = sample_sphere(spec, seed, samples)
    extra = [np.asarray(norm_one(piece).meta["witness"], dtype=complex)]
    if math.isinf(spec.q):
        extra.append(np.ones(spec.n, dtype=complex))
    Z = np.vstack([Z, np.array(extra)])
    mods = np.abs(Z)
    values = np.prod(mods[:, None, :] ** piece.exponents[None, :, :], axis=2) @ piece.weights
    k = int(np.argmax(values))
    lhs = float(values[k])
    x0 = vector_norm(f.constant, spec.p)
    bound = sidon_upper * (1.0 - x0 * x0)
    margin = bound - lhs
    kind = HOLDS if lhs <= bound + WIENER_SLACK else VIOLATED
    return Verdict(kind, margin, kind == VIOLATED, Z[k], {"lhs": lhs, "bound": bound})


def _orbit_values(Q: HomogeneousPolynomial, t: np.ndarray, phases: np.ndarray) -> np.ndarray:
    return evaluate_many(Q, t[None, :] * np.exp(1j * phases))


def corner_strictness_check(Q: HomogeneousPolynomial, z, samples: int = 1000, seed: int = 0,
                            grid: int = 32) -> Verdict:
    """Strictness of ``(sum |x*(x_alpha) z^alpha|^2)^(1/2) < sup_{v in Omega_z} |x*(Q(v))|``.

    The dual functional ``x*`` is realised as a coordinate functional
    ``e_k^*`` for which two corner coefficients ``x_{m e_j}``, ``x_{m e_j'}``
    are both non-zero.  ``margin`` is the best such coordinate margin; the
    torus orbit is sampled on a phase grid plus random phases and the best
    sample is refined by ascent.  ``meta["norm_margin"]`` records the
    same comparison with codomain norms in place of ``x*``.
    """
    z = np.asarray(z, dtype=complex).ravel()
    spec = Q.spec
    n, m = spec.n, Q.degree
    if z.size != n:
        raise ValueError(f"point has {z.size} coordinates, expected {n}")
    t = np.abs(z)
    if np.any(t == 0):
        raise ValueError("corner check needs all |z_i| > 0")
    if m < 1 or n < 2:
        raise ValueError("corner check needs m >= 1 and n >= 2")
    position = {alpha: k for k, alpha in enumerate(Q.indices)}
    corners = np.array([Q.coefficients[position[corner_index(m, n, j)]] for j in range(n)])
    nonzero = corners != 0
    if int(np.any(nonzero, axis=1).sum()) < 2:
        raise ValueError("corner check needs at least two non-zero corner coefficients")
    coords = [k for k in range(spec.d) if int(nonzero[:, k].sum()) >= 2]
    if not coords:
        return Verdict(INCONCLUSIVE, 0.0, False, None,
                       {"reason": "no coordinate functional detects two corners"})

    rng = np.random.default_rng(seed)
    random_phases = np.hstack([np.zeros((samples, 1)), rng.uniform(0, 2 * np.pi, (samples, n - 1))])
    if n - 1 <= 2:
        axes = [np.arange(grid) * (2 * np.pi / grid)] * (n - 1)
        mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, n - 1)
        phases = np.vstack([np.hstack([np.zeros((mesh.shape[0], 1)), mesh]), random_phases])
    else:
        phases = random_phases
    values = _orbit_values(Q, t, phases)
    polydisc = SpaceSpec(n, INF, 1, spec.p)
    exps = Q.exponents
    mods = np.prod(t[None, :] ** exps, axis=1)

    best_margin, best_v, per_coord = -math.inf, None, {}
    for k in coords:
        aggregate = math.sqrt(math.fsum((np.abs(Q.coefficients[:, k]) * mods) ** 2))
        j = int(np.argmax(np.abs(values[:, k])))
        phi, _ = _ascend_sup(exps, Q.coefficients[:, k:k + 1], polydisc, phases[j:j + 1].copy(), t[None, :])
        v = t * np.exp(1j * phi[0])
        refined = abs(evaluate_many(Q, v[None, :])[0, k])
        top = max(refined, float(np.abs(values[j, k])))
        if top > refined:
            v = t * np.exp(1j * phases[j])
        margin = top - aggregate
        per_coord[k] = margin
        if margin > best_margin:
            best_margin, best_v = margin, v

    aggregate_norm = math.sqrt(math.fsum((Q.weights * mods) ** 2))
    norm_margin = float(vector_norms(values, spec.p).max()) - aggregate_norm
    kind = HOLDS if best_margin > CORNER_THRESHOLD else INCONCLUSIVE
    return Verdict(kind, best_margin, kind == HOLDS, best_v,
                   {"coordinates": per_coord, "norm_margin": norm_margin})
