"""Vector-valued homogeneous polynomials, truncated power series and their norms.

Coefficients live in ``X = l^d_p`` and are stored as a ``(N, d)`` complex
array whose rows follow :func:`bohrradius.multiindex.enumerate_indices`.
For a polynomial ``Q = sum_alpha x_alpha z^alpha`` on the ball of ``l^n_q``:

* ``||Q||_inf = sup ||Q(z)||_p`` (sup norm),
* ``||Q||_1 = sup sum ||x_alpha|| |z^alpha|`` (coefficient majorant),
* ``||Q||_2 = sup (sum ||x_alpha||^2 |z^alpha|^2)^(1/2)``,

all suprema taken over ``||z||_q = 1``.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass
from typing import Union

import numpy as np

from bohrradius.intervals import CERTIFIED, HEURISTIC, BoundInterval, gamma_factor
from bohrradius.multiindex import MultiIndex, count_multi_indices, enumerate_indices
from bohrradius.spaces import SpaceSpec, normalize_to_sphere, vector_norm, vector_norms

# budget of seed points for the orthant optimiser
_SIMPLEX_GRID_POINTS = 4000
_REFINE_STARTS = 6
_REFINE_ITERS = 400
_SUP_ASCENT_ITERS = 150
_SUP_POOL = 16


@dataclass(frozen=True, eq=False)
class HomogeneousPolynomial:
    """An ``m``-homogeneous polynomial ``C^n -> C^d``.

    ``coefficients[k]`` is the vector ``x_alpha`` for the ``k``-th index of
    ``enumerate_indices(degree, spec.n)``.
    """

    degree: int
    spec: SpaceSpec
    coefficients: np.ndarray

    def __post_init__(self) -> None:
        coeffs = np.array(self.coefficients, dtype=complex)
        if coeffs.ndim == 1 and self.spec.d == 1:
            coeffs = coeffs[:, None]
        expected = (count_multi_indices(self.degree, self.spec.n), self.spec.d)
        if coeffs.shape != expected:
            raise ValueError(f"coefficient array has shape {coeffs.shape}, expected {expected}")
        if not np.all(np.isfinite(coeffs)):
            raise ValueError("coefficients must be finite")
        coeffs.setflags(write=False)
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def from_dict(cls, degree: int, spec: SpaceSpec,
                  mapping: Mapping[Sequence[int], Union[complex, Sequence[complex]]]) -> HomogeneousPolynomial:
        indices = enumerate_indices(degree, spec.n)
        position = {alpha: k for k, alpha in enumerate(indices)}
        coeffs = np.zeros((len(indices), spec.d), dtype=complex)
        for alpha, value in mapping.items():
            alpha = tuple(int(a) for a in alpha)
            if alpha not in position:
                raise ValueError(f"multi-index {alpha} is not of degree {degree} in {spec.n} variables")
            vec = np.atleast_1d(np.asarray(value, dtype=complex))
            if vec.shape != (spec.d,):
                raise ValueError(f"coefficient of {alpha} must have length {spec.d}")
            coeffs[position[alpha]] = vec
        return cls(degree, spec, coeffs)

    @classmethod
    def zero(cls, degree: int, spec: SpaceSpec) -> HomogeneousPolynomial:
        return cls(degree, spec, np.zeros((count_multi_indices(degree, spec.n), spec.d), dtype=complex))

    @classmethod
    def random(cls, degree: int, spec: SpaceSpec, rng: np.random.Generator,
               density: float = 1.0) -> HomogeneousPolynomial:
        """Complex Gaussian coefficients; each is kept with probability ``density``."""
        shape = (count_multi_indices(degree, spec.n), spec.d)
        coeffs = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
        if density < 1.0:
            keep = rng.random(shape[0]) < density
            if not keep.any():
                keep[rng.integers(shape[0])] = True
            coeffs[~keep] = 0.0
        return cls(degree, spec, coeffs)

    @property
    def indices(self) -> list[MultiIndex]:
        return enumerate_indices(self.degree, self.spec.n)

    @property
    def exponents(self) -> np.ndarray:
        return np.array(self.indices, dtype=int).reshape(-1, self.spec.n)

    @property
    def weights(self) -> np.ndarray:
        """``||x_alpha||_p`` for every index."""
        return vector_norms(self.coefficients, self.spec.p)

    @property
    def is_zero(self) -> bool:
        return not np.any(self.coefficients)

    def coefficient_map(self) -> dict[MultiIndex, np.ndarray]:
        return {alpha: self.coefficients[k].copy()
                for k, alpha in enumerate(self.indices) if np.any(self.coefficients[k])}

    def scaled(self, factor: complex) -> HomogeneousPolynomial:
        return HomogeneousPolynomial(self.degree, self.spec, self.coefficients * factor)

    def coordinate(self, k: int) -> HomogeneousPolynomial:
        """Scalar polynomial ``e_k^*(Q)``."""
        scalar = SpaceSpec(self.spec.n, self.spec.q, 1, self.spec.p)
        return HomogeneousPolynomial(self.degree, scalar, self.coefficients[:, k:k + 1])


@dataclass(frozen=True, eq=False)
class TruncatedPowerSeries:
    """A power series ``sum_{|alpha| <= M} x_alpha z^alpha`` split into homogeneous slices.

    ``tail_majorant(r)``, when given, bounds ``sum_{|alpha| > M} ||x_alpha|| r^|alpha|``
    sup-ed over the ball for the untruncated function the series came from.
    ``declared_sup`` records a known sup norm of that untruncated function.
    """

    max_degree: int
    spec: SpaceSpec
    slices: tuple[HomogeneousPolynomial, ...]
    tail_majorant: Callable[[float], float] | None = None
    declared_sup: float | None = None
    label: str = ""

    def __post_init__(self) -> None:
        slices = tuple(self.slices)
        if len(slices) != self.max_degree + 1:
            raise ValueError(f"expected {self.max_degree + 1} slices, got {len(slices)}")
        for m, piece in enumerate(slices):
            if piece.degree != m or piece.spec != self.spec:
                raise ValueError(f"slice {m} has degree {piece.degree} / spec {piece.spec}")
        object.__setattr__(self, "slices", slices)

    @classmethod
    def from_dict(cls, max_degree: int, spec: SpaceSpec,
                  mapping: Mapping[Sequence[int], Union[complex, Sequence[complex]]],
                  **kwargs) -> TruncatedPowerSeries:
        grouped: dict[int, dict] = {m: {} for m in range(max_degree + 1)}
        for alpha, value in mapping.items():
            m = sum(alpha)
            if m > max_degree:
                raise ValueError(f"multi-index {tuple(alpha)} exceeds max degree {max_degree}")
            grouped[m][tuple(alpha)] = value
        slices = tuple(HomogeneousPolynomial.from_dict(m, spec, grouped[m]) for m in range(max_degree + 1))
        return cls(max_degree, spec, slices, **kwargs)

    @classmethod
    def random(cls, max_degree: int, spec: SpaceSpec, rng: np.random.Generator,
               density: float = 1.0) -> TruncatedPowerSeries:
        slices = tuple(HomogeneousPolynomial.random(m, spec, rng, density) for m in range(max_degree + 1))
        return cls(max_degree, spec, slices)

    @property
    def constant(self) -> np.ndarray:
        return self.slices[0].coefficients[0].copy()

    def slice(self, m: int) -> HomogeneousPolynomial:
        if 0 <= m <= self.max_degree:
            return self.slices[m]
        return HomogeneousPolynomial.zero(m, self.spec)

    def scaled(self, factor: complex) -> TruncatedPowerSeries:
        tail = self.tail_majorant
        scaled_tail = None if tail is None else (lambda r, _t=tail, _c=abs(factor): _c * _t(r))
        declared = None if self.declared_sup is None else abs(factor) * self.declared_sup
        return TruncatedPowerSeries(self.max_degree, self.spec, tuple(s.scaled(factor) for s in self.slices),
                                    scaled_tail, declared, self.label)


Polynomial = Union[HomogeneousPolynomial, TruncatedPowerSeries]


def _terms(P: Polynomial) -> tuple[np.ndarray, np.ndarray]:
    """Stacked exponent matrix and coefficient matrix of all monomials of ``P``."""
    if isinstance(P, HomogeneousPolynomial):
        return P.exponents, P.coefficients
    exps = np.vstack([s.exponents for s in P.slices])
    coeffs = np.vstack([s.coefficients for s in P.slices])
    return exps, coeffs


def _max_degree(P: Polynomial) -> int:
    return P.degree if isinstance(P, HomogeneousPolynomial) else P.max_degree


def monomial_matrix(exps: np.ndarray, Z: np.ndarray) -> np.ndarray:
    """``M[k, a] = Z[k]^exps[a]`` for points ``Z`` of shape ``(K, n)``."""
    Z = np.atleast_2d(Z)
    return np.prod(Z[:, None, :] ** exps[None, :, :], axis=2)


def evaluate(P: Polynomial, z) -> np.ndarray:
    """Value ``sum_alpha x_alpha z^alpha`` in ``C^d``.

    Real and imaginary parts of every output coordinate are accumulated with
    ``math.fsum`` in index order, so the result is reproducible bit for bit.
    """
    z = np.asarray(z, dtype=complex).ravel()
    if z.size != P.spec.n:
        raise ValueError(f"point has {z.size} coordinates, expected {P.spec.n}")
    exps, coeffs = _terms(P)
    products = coeffs * monomial_matrix(exps, z)[0][:, None]
    out = np.empty(P.spec.d, dtype=complex)
    for k in range(P.spec.d):
        out[k] = complex(math.fsum(products[:, k].real), math.fsum(products[:, k].imag))
    return out


def evaluate_many(P: Polynomial, Z: np.ndarray) -> np.ndarray:
    """Vectorised evaluation at the rows of ``Z``; returns ``(K, d)``."""
    exps, coeffs = _terms(P)
    return monomial_matrix(exps, np.asarray(Z, dtype=complex)) @ coeffs


def coefficient_aggregate(P: Polynomial, z) -> float:
    """``(sum_alpha ||x_alpha z^alpha||^2)^(1/2)``, which only depends on ``|z_i|``."""
    exps, coeffs = _terms(P)
    mods = np.abs(monomial_matrix(exps, np.asarray(z, dtype=complex).ravel()))[0]
    w = vector_norms(coeffs, P.spec.p) * mods
    return math.sqrt(math.fsum(w * w))


# --- maximisation of sum_a w_a t^a over t >= 0, ||t||_q = 1 -----------------


def _project_simplex(v: np.ndarray) -> np.ndarray:
    """Euclidean projection of the rows of ``v`` onto the probability simplex."""
    v = np.atleast_2d(v)
    u = -np.sort(-v, axis=1)
    css = np.cumsum(u, axis=1) - 1.0
    ind = np.arange(1, v.shape[1] + 1)
    cond = u - css / ind > 0
    rho = v.shape[1] - 1 - np.argmax(cond[:, ::-1], axis=1)
    theta = css[np.arange(v.shape[0]), rho] / (rho + 1)
    return np.maximum(v - theta[:, None], 0.0)


def _simplex_grid(n: int) -> tuple[np.ndarray, int]:
    resolution = 1
    while count_multi_indices(resolution + 1, n) <= _SIMPLEX_GRID_POINTS:
        resolution += 1
    return np.array(enumerate_indices(resolution, n), dtype=float) / resolution, resolution


def _posynomial_on_simplex(U: np.ndarray, powers: np.ndarray, weights: np.ndarray) -> np.ndarray:
    return np.prod(U[:, None, :] ** powers[None, :, :], axis=2) @ weights


@dataclass
class OrthantMax:
    value: float
    point: np.ndarray
    converged: bool


def maximize_on_orthant_sphere(exps: np.ndarray, weights: np.ndarray, q: float) -> OrthantMax:
    """Maximise ``g(t) = sum_a weights[a] t^exps[a]`` over ``t >= 0``, ``||t||_q = 1``, finite ``q``.

    With ``u_i = t_i^q`` the feasible set is the probability simplex.  A
    grid on the simplex seeds a handful of projected gradient ascents; the
    returned ``point`` is feasible and ``value`` is ``g`` evaluated there, so
    it is always a valid lower bound of the maximum.
    """
    n = exps.shape[1]
    weights = np.asarray(weights, dtype=float)
    powers = exps / q
    if n == 1 or not np.any(weights):
        t = np.full(n, n ** (-1.0 / q))
        if n == 1:
            t = np.ones(1)
        return OrthantMax(_posynomial_value(exps, weights, t), t, True)

    grid, resolution = _simplex_grid(n)
    values = _posynomial_on_simplex(grid, powers, weights)
    order = np.argsort(-values, kind="stable")
    # best grid points, pairwise separated so the ascents explore distinct basins
    starts = [grid[order[0]]]
    for k in order[1:]:
        if len(starts) >= _REFINE_STARTS:
            break
        if all(np.max(np.abs(grid[k] - s)) > 2.5 / resolution for s in starts):
            starts.append(grid[k])
    U = np.array(starts)
    best_vals = _posynomial_on_simplex(U, powers, weights)
    steps = np.full(len(U), 0.1)
    converged = np.zeros(len(U), dtype=bool)
    for _ in range(_REFINE_ITERS):
        active = ~converged
        if not active.any():
            break
        Ua = U[active]
        safe = np.maximum(Ua, 1e-14)
        terms = np.prod(Ua[:, None, :] ** powers[None, :, :], axis=2) * weights[None, :]
        grad = (terms[:, :, None] * powers[None, :, :]).sum(axis=1) / safe
        scale = np.maximum(np.abs(grad).max(axis=1, keepdims=True), 1e-300)
        trial = _project_simplex(Ua + steps[active, None] * grad / scale)
        trial_vals = _posynomial_on_simplex(trial, powers, weights)
        better = trial_vals > best_vals[active] * (1 + 1e-15)
        idx = np.flatnonzero(active)
        moved = np.max(np.abs(trial - Ua), axis=1)
        U[idx[better]] = trial[better]
        best_vals[idx[better]] = trial_vals[better]
        steps[idx[better]] *= 1.5
        steps[idx[~better]] *= 0.5
        done = (steps[idx] < 1e-13) | (better & (moved < 1e-15))
        converged[idx[done]] = True
    k = int(np.argmax(best_vals))
    t = U[k] ** (1.0 / q)
    t = np.abs(normalize_to_sphere(t, q)[0])
    return OrthantMax(_posynomial_value(exps, weights, t), t, bool(converged[k]))


def _posynomial_value(exps: np.ndarray, weights: np.ndarray, t: np.ndarray) -> float:
    return math.fsum(weights * np.prod(t[None, :] ** exps, axis=1))


def _termwise_bound(exps: np.ndarray, weights: np.ndarray, q: float) -> float:
    """``sum_a w_a max_{||t||_q=1} t^a``: a certified, usually loose, upper bound."""
    total = []
    for alpha, w in zip(exps, weights):
        m = alpha.sum()
        if m == 0:
            total.append(w)
            continue
        frac = alpha[alpha > 0] / m
        total.append(w * float(np.prod(frac ** (frac * m / q))))
    return math.fsum(total) * (1 + gamma_factor(8 * len(total) + 16))


def _orthant_interval(exps: np.ndarray, weights: np.ndarray, q: float, power: float = 1.0) -> BoundInterval:
    """Sup of ``(sum w t^a)^power`` over the positive orthant of the unit q-sphere."""
    if math.isinf(q):
        total = math.fsum(weights)
        err = gamma_factor(len(weights) + 2) * total
        return BoundInterval(max(total - err, 0.0) ** power, (total + err) ** power, CERTIFIED,
                             {"witness": np.ones(exps.shape[1])})
    opt = maximize_on_orthant_sphere(exps, weights, q)
    lo = opt.value ** power
    meta = {"witness": opt.point, "converged": opt.converged}
    if opt.converged:
        return BoundInterval(lo, lo, HEURISTIC, meta)
    hi = max(_termwise_bound(exps, weights, q) ** power, lo)
    return BoundInterval(lo, hi, HEURISTIC, meta)


def norm_one(Q: HomogeneousPolynomial) -> BoundInterval:
    """Enclosure of ``||Q||_1 = sup_{||z||_q=1} sum ||x_alpha|| |z^alpha|``.

    Exact for ``q = inf`` (the sum of coefficient norms).  For finite ``q``
    the lower end is the value at a feasible witness and the upper end is the
    optimiser's value (status ``heuristic``); if the optimiser stalls, the
    upper end falls back to a termwise bound and ``meta["converged"]`` is
    False.
    """
    return _orthant_interval(Q.exponents, Q.weights, Q.spec.q)


def norm_two(Q: HomogeneousPolynomial) -> BoundInterval:
    """Enclosure of ``||Q||_2 = sup_{||z||_q=1} (sum ||x_alpha||^2 |z^alpha|^2)^(1/2)``."""
    return _orthant_interval(2 * Q.exponents, Q.weights ** 2, Q.spec.q, power=0.5)


# --- sup norm -----------------------------------------------------------------


def _norm_gradient(V: np.ndarray, p: float) -> tuple[np.ndarray, np.ndarray]:
    """Row norms of ``V`` and a (sub)gradient ``g`` with ``dF = Re sum conj(g) dV``."""
    F = vector_norms(V, p)
    A = np.abs(V)
    phase = np.divide(V, A, out=np.zeros_like(V), where=A > 0)
    if math.isinf(p):
        g = np.zeros_like(V)
        k = np.argmax(A, axis=1)
        rows = np.arange(V.shape[0])
        g[rows, k] = phase[rows, k]
    elif p == 1.0:
        g = phase
    else:
        safe_F = np.where(F > 0, F, 1.0)
        g = (A / safe_F[:, None]) ** (p - 1) * phase
    return F, g


def _ascend_sup(exps: np.ndarray, coeffs: np.ndarray, spec: SpaceSpec,
                phi: np.ndarray, t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Projected gradient ascent of ``||P(t e^{i phi})||_p`` from each row of ``(phi, t)``."""
    free_t = not math.isinf(spec.q)
    K = phi.shape[0]
    steps = np.full(K, 0.2)

    def value_and_grad(phi, t):
        Z = t * np.exp(1j * phi)
        mon = monomial_matrix(exps, Z)
        V = mon @ coeffs
        F, g = _norm_gradient(V, spec.p)
        # D[k, j, :] = sum_a exps[a, j] x_a z_k^a
        D = np.einsum("ka,aj,ad->kjd", mon, exps.astype(float), coeffs)
        inner = np.einsum("kd,kjd->kj", np.conj(g), D)
        g_phi = -inner.imag
        g_t = inner.real / np.maximum(t, 1e-12)
        return F, g_phi, g_t

    F, g_phi, g_t = value_and_grad(phi, t)
    for _ in range(_SUP_ASCENT_ITERS):
        scale = np.maximum(np.abs(g_phi).max(axis=1), np.abs(g_t).max(axis=1) if free_t else 0.0)
        scale = np.where(scale > 0, scale, 1.0)
        new_phi = phi + (steps / scale)[:, None] * g_phi
        new_t = t
        if free_t:
            new_t = np.abs(normalize_to_sphere(np.maximum(t + (steps / scale)[:, None] * g_t, 0.0) + 1e-300,
                                               spec.q))
        F_new, gp_new, gt_new = value_and_grad(new_phi, new_t)
        better = F_new > F
        phi = np.where(better[:, None], new_phi, phi)
        t = np.where(better[:, None], new_t, t)
        F = np.where(better, F_new, F)
        g_phi = np.where(better[:, None], gp_new, g_phi)
        g_t = np.where(better[:, None], gt_new, g_t)
        steps = np.where(better, steps * 1.5, steps * 0.5)
        if np.all(steps < 1e-12):
            break
    return phi, t


def norm_sup_heuristic(P: Polynomial, restarts: int = 8, seed: int = 0) -> tuple[float, np.ndarray]:
    """Lower bound of ``||P||_inf`` and a feasible witness point attaining it.

    Restart ``k`` draws its start from ``default_rng([seed, k])`` (best of a
    small pool), then runs projected gradient ascent in phases and, for
    finite ``q``, magnitudes.  Restarts are independent, so the bound for
    ``restarts = r`` never exceeds the bound for ``restarts > r``.
    """
    if restarts < 1:
        raise ValueError("restarts must be positive")
    spec = P.spec
    n = spec.n
    exps, coeffs = _terms(P)
    if not np.any(coeffs):
        return 0.0, np.full(n, 1.0 if math.isinf(spec.q) else n ** (-1.0 / spec.q), dtype=complex)

    starts_phi, starts_t = [], []
    for k in range(restarts):
        rng = np.random.default_rng([seed, k])
        phi = rng.uniform(0.0, 2 * np.pi, size=(_SUP_POOL, n))
        if math.isinf(spec.q):
            t = np.ones((_SUP_POOL, n))
        else:
            t = np.abs(normalize_to_sphere(np.abs(rng.standard_normal((_SUP_POOL, n))) + 1e-12, spec.q))
        if k == 0:
            phi[0] = 0.0
            t[0] = 1.0 if math.isinf(spec.q) else n ** (-1.0 / spec.q)
        vals = vector_norms(evaluate_many(P, t * np.exp(1j * phi)), spec.p)
        best = int(np.argmax(vals))
        starts_phi.append(phi[best])
        starts_t.append(t[best])
    # one ascent per restart: batching would couple the runs through rounding
    # and make the result depend on how many restarts share a batch
    Z = np.empty((restarts, n), dtype=complex)
    for k in range(restarts):
        phi, t = _ascend_sup(exps, coeffs, spec, starts_phi[k][None, :], starts_t[k][None, :])
        Z[k] = t[0] * np.exp(1j * phi[0])
    if not math.isinf(spec.q):
        Z = normalize_to_sphere(Z, spec.q)
    values = [vector_norm(evaluate(P, z), spec.p) for z in Z]
    k = int(np.argmax(values))
    return float(values[k]), Z[k]


def _phase_mesh(dims: int, mesh: int) -> np.ndarray:
    axes = [np.arange(mesh) * (2 * np.pi / mesh)] * dims
    return np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, dims)


def norm_sup_certified(P: Polynomial, mesh: int = 64, max_dim: int = 3, max_mesh: int = 64) -> BoundInterval:
    """Certified enclosure of ``||P||_inf`` on the polydisc (``q = inf`` only).

    The lower end is the largest value on an equispaced phase mesh of the
    torus.  Between mesh nodes, along a straight phase path from the nearest
    node, ``s -> P(z e^{i s u})`` is an exponential sum whose frequencies
    ``<alpha, u>`` span an interval of half-width ``tau``; after removing the
    central frequency (a unimodular factor) Bernstein's inequality for
    functions of exponential type gives ``|d/ds ||P||| <= tau ||P||_inf``
    and the chain rule gives ``<= tau sum ||x_alpha||``.  Hence

        ||P||_inf <= min(lo + tau sum ||x_alpha||, lo / (1 - tau)).

    For homogeneous ``P`` the first phase is fixed to zero since
    ``|Q(e^{is} z)| = |Q(z)|``, leaving an ``(n-1)``-dimensional mesh.
    """
    spec = P.spec
    if not math.isinf(spec.q):
        raise ValueError("certified sup norm is only available for q = inf")
    if mesh < 1:
        raise ValueError("mesh must be positive")
    if spec.n > max_dim or mesh > max_mesh:
        raise ValueError(f"mesh budget exceeded: n={spec.n} (max {max_dim}), mesh={mesh} (max {max_mesh})")
    exps, coeffs = _terms(P)
    weights = vector_norms(coeffs, spec.p)
    total = math.fsum(weights)
    if total == 0.0:
        return BoundInterval.exact(0.0, mesh=mesh, tau=0.0)
    homogeneous = isinstance(P, HomogeneousPolynomial)
    degree = _max_degree(P)
    n = spec.n
    if homogeneous:
        dims = n - 1
        # phase displacement u has u_1 = 0 and |u_j| <= pi/mesh otherwise
        width = 0.0 if dims == 0 else (np.pi / mesh if n == 2 else 2 * np.pi / mesh)
        tau = degree * width / 2
    else:
        dims = n
        tau = degree * np.pi / mesh
    if dims == 0:
        phases = np.zeros((1, n))
    else:
        phases = _phase_mesh(dims, mesh)
        if homogeneous:
            phases = np.hstack([np.zeros((phases.shape[0], 1)), phases])
    values = vector_norms(evaluate_many(P, np.exp(1j * phases)), spec.p)
    k = int(np.argmax(values))
    # rounding in exp, the monomial products, the sum and the norm
    err = (gamma_factor(len(weights) * (degree + 4) + 2 * spec.d + 16) + 4 * degree * 2.0**-53) * total
    lo = max(float(values[k]) - err, 0.0)
    top = float(values[k]) + err
    hi = top + tau * total
    if tau < 1.0:
        hi = min(hi, top / (1.0 - tau))
    hi = math.nextafter(hi * (1 + 4 * 2.0**-53), math.inf)
    return BoundInterval(lo, hi, CERTIFIED, {"mesh": mesh, "tau": tau, "witness": np.exp(1j * phases[k])})


def coefficient_majorant(f: Polynomial, r: float) -> BoundInterval:
    """Enclosure of ``sup_{||z||_q <= 1} sum ||x_alpha|| r^|alpha| |z^alpha|``.

    A ``tail_majorant`` carried by the series is added to the upper end.
    Exact up to rounding for ``q = inf``; for finite ``q`` each homogeneous
    slice is maximised separately (upper end, heuristic) and the lower end
    is the full sum at the best slice witness.
    """
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"radius must lie in [0, 1], got {r}")
    if isinstance(f, HomogeneousPolynomial):
        slices = {f.degree: f}
        tail = None
    else:
        slices = dict(enumerate(f.slices))
        tail = f.tail_majorant
    spec = f.spec
    tail_value = 0.0 if tail is None or r == 0.0 else float(tail(r))
    if math.isinf(spec.q):
        terms = [math.fsum(s.weights) * r**m for m, s in slices.items()]
        total = math.fsum(terms)
        err = gamma_factor(sum(len(s.weights) for s in slices.values()) + 4 * len(slices) + 8) * total
        return BoundInterval(max(total - err, 0.0), total + err + tail_value, CERTIFIED)

    upper_terms, witnesses = [], []
    for m, s in slices.items():
        if m == 0 or r == 0.0:
            upper_terms.append(math.fsum(s.weights) * r**m if m else math.fsum(s.weights))
            continue
        piece = norm_one(s)
        upper_terms.append(piece.hi * r**m)
        witnesses.append(piece.meta["witness"])
    hi = math.fsum(upper_terms) + tail_value
    lo = 0.0
    for t in witnesses or [np.full(spec.n, spec.n ** (-1.0 / spec.q))]:
        lo = max(lo, math.fsum(math.fsum(s.weights * np.prod((r * t)[None, :] ** s.exponents, axis=1))
                               for s in slices.values()))
    return BoundInterval(min(lo, hi), max(lo, hi), HEURISTIC)
