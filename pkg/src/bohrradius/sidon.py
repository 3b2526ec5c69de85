"""Two-sided estimates of the Sidon constants ``S(m, n)`` and the derived ``Gamma_n``, ``K^n_m``.

``S(m, n)`` is the best constant in ``||Q||_1 <= S ||Q||_inf`` over
``m``-homogeneous ``Q`` on ``l^n_q`` with values in ``l^d_p``; it coincides
with the unconditional basis constant of the monomials, so
:func:`chi_mon` is the same estimator.

Lower bounds come from explicit witness polynomials found by ascent in
coefficient space.  A witness only counts as certified when its sup norm is
bounded from above rigorously (``q = inf``, ``n <= 3``); otherwise the
estimate is tagged heuristic.  Upper bounds are ``sqrt(N_m(n))`` times the
codomain factor ``d^|1/2 - 1/p|`` (exactly ``sqrt(N_m(n))`` for scalars),
improved by a dual-kernel certificate for scalar two-variable polydisc
cases.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field, replace
from typing import Any

import numpy as np

from bohrradius.cache import SidonCache
from bohrradius.intervals import CERTIFIED, CLAMPED, HEURISTIC, BoundInterval
from bohrradius.multiindex import count_multi_indices, enumerate_indices
from bohrradius.polynorms import (
    HomogeneousPolynomial,
    evaluate_many,
    monomial_matrix,
    norm_one,
    norm_sup_certified,
    norm_sup_heuristic,
    _norm_gradient,
)
from bohrradius.spaces import SpaceSpec, format_exponent, sample_sphere, vector_norms

METHODS = ("exact-m1", "search", "trivial-one", "sqrtN-cap")
TAIL_POLICY = "sqrtN-upper-one-lower"
ITERATIONS_PER_RESTART = 200
CLOUD_SIZE = 2048
CERTIFY_MESH = 64
CERTIFY_MAX_DIM = 3
KERNEL_DEGREES = (2,)
_POWERS = (8.0, 32.0, 128.0)


def sqrt_count(m: int, n: int) -> float:
    """``sqrt(N_m(n))`` rounded upwards (exact for perfect squares)."""
    N = count_multi_indices(m, n)
    r = math.isqrt(N)
    if r * r == N:
        return float(r)
    return math.nextafter(math.sqrt(N), math.inf)


def codomain_factor(spec: SpaceSpec) -> float:
    """``d^|1/2 - 1/p|``: the price of comparing ``l^d_p`` with ``l^d_2``; 1 for scalars."""
    if spec.d == 1:
        return 1.0
    gap = abs(0.5 - (0.0 if math.isinf(spec.p) else 1.0 / spec.p))
    if gap == 0.0:
        return 1.0
    return math.nextafter(spec.d ** gap, math.inf)


def sidon_cap(m: int, spec: SpaceSpec) -> float:
    """Certified upper bound ``d^|1/2-1/p| sqrt(N_m(n))``.

    Cauchy-Schwarz over the ``N`` monomials bounds ``||Q||_1`` by
    ``sqrt(N)`` times the quadratic aggregate, which is the torus average of
    ``||Q(v)||_2^2`` under the root; switching between ``l_p`` and ``l_2``
    norms costs ``d^|1/2-1/p|`` in total.
    """
    base, factor = sqrt_count(m, spec.n), codomain_factor(spec)
    return base if factor == 1.0 else math.nextafter(base * factor, math.inf)


@dataclass(frozen=True, eq=False)
class SidonEstimate:
    m: int
    n: int
    spec: SpaceSpec
    lower: float
    upper: float
    witness: HomogeneousPolynomial | None
    method: str
    seed: int
    budget: int = 0
    certified: bool = True
    upper_method: str = "sqrtN"
    witness_sup: BoundInterval | None = None

    def __post_init__(self) -> None:
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if not 1.0 <= self.lower <= self.upper:
            raise ValueError(f"estimate [{self.lower}, {self.upper}] violates 1 <= lower <= upper")

    @property
    def interval(self) -> BoundInterval:
        return BoundInterval(self.lower, self.upper, CERTIFIED if self.certified else HEURISTIC)

    @property
    def witness_hash(self) -> str:
        if self.witness is None:
            return "-"
        return hashlib.sha256(np.ascontiguousarray(self.witness.coefficients).tobytes()).hexdigest()[:16]

    def record(self) -> dict[str, Any]:
        return {
            "m": self.m, "n": self.n,
            "q": format_exponent(self.spec.q), "d": self.spec.d, "p": format_exponent(self.spec.p),
            "lower": self.lower, "upper": self.upper, "method": self.method,
            "budget": self.budget, "seed": self.seed,
            "certified": self.certified, "upper_method": self.upper_method,
            "witness_hash": self.witness_hash,
        }

    @classmethod
    def from_record(cls, rec: dict[str, Any], spec: SpaceSpec) -> SidonEstimate:
        return cls(int(rec["m"]), int(rec["n"]), spec, float(rec["lower"]), float(rec["upper"]), None,
                   rec["method"], int(rec["seed"]), int(rec["budget"]), bool(rec.get("certified", True)),
                   rec.get("upper_method", "sqrtN"))


# --- witness search ---------------------------------------------------------


def _cloud(m: int, spec: SpaceSpec, seed: int) -> np.ndarray:
    """Feasible points used by the smooth surrogate of the sup norm."""
    n = spec.n
    if math.isinf(spec.q):
        # homogeneity: |Q(e^{is} z)| = |Q(z)|, so fix the first phase
        if n == 2:
            phases = np.arange(256)[:, None] * (2 * np.pi / 256)
        elif n == 3:
            g = np.arange(32) * (2 * np.pi / 32)
            phases = np.stack(np.meshgrid(g, g, indexing="ij"), axis=-1).reshape(-1, 2)
        else:
            rng = np.random.default_rng([seed, m, n, 7])
            phases = rng.uniform(0, 2 * np.pi, size=(CLOUD_SIZE, n - 1))
        return np.exp(1j * np.hstack([np.zeros((phases.shape[0], 1)), phases]))
    return sample_sphere(spec, seed=int(np.random.default_rng([seed, m, n, 11]).integers(2**62)),
                         count=CLOUD_SIZE)


def _power_mean(values: np.ndarray, r: float) -> tuple[float, np.ndarray]:
    """``(mean v^r)^(1/r)`` and its gradient with respect to ``v``."""
    top = float(values.max())
    if top <= 0:
        return 0.0, np.zeros_like(values)
    s = values / top
    mean = float(np.mean(s**r))
    value = top * mean ** (1.0 / r)
    grad = mean ** (1.0 / r - 1.0) * s ** (r - 1.0) / len(values)
    return value, grad


class _Surrogate:
    """``log A(X) - log S(X)``: smooth stand-ins for ``log ||Q||_1 - log ||Q||_inf``."""

    def __init__(self, m: int, spec: SpaceSpec, cloud: np.ndarray):
        self.spec = spec
        exps = np.array(enumerate_indices(m, spec.n), dtype=int).reshape(-1, spec.n)
        self.M = monomial_matrix(exps, cloud)
        self.absM = np.abs(self.M)

    def __call__(self, X: np.ndarray, r: float) -> tuple[float, np.ndarray]:
        p = self.spec.p
        w, gw = _norm_gradient(X, p)
        if math.isinf(self.spec.q):
            A, GA = float(w.sum()), gw
        else:
            A, dT = _power_mean(self.absM @ w, r)
            GA = (self.absM.T @ dT)[:, None] * gw
        F, g = _norm_gradient(self.M @ X, p)
        S, dF = _power_mean(F, r)
        if A <= 0 or S <= 0:
            return -math.inf, np.zeros_like(X)
        GS = self.M.conj().T @ (dF[:, None] * g)
        return math.log(A) - math.log(S), GA / A - GS / S


def _start(kind: int, shape: tuple[int, int], rng: np.random.Generator) -> np.ndarray:
    if kind == 0:
        X = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    elif kind == 1:
        X = rng.choice([-1.0, 1.0], size=shape).astype(complex)
    else:
        X = np.exp(2j * np.pi * rng.random(shape))
    return X / np.linalg.norm(X)


def _ascend(surrogate: _Surrogate, X: np.ndarray, iterations: int) -> np.ndarray:
    """Normalised gradient ascent on the unit sphere of coefficient space."""
    per_stage = max(1, iterations // len(_POWERS))
    for r in _POWERS:
        J, G = surrogate(X, r)
        step = 0.1
        for _ in range(per_stage):
            gnorm = np.linalg.norm(G)
            if gnorm == 0 or step < 1e-10:
                break
            trial = X + step * G / gnorm
            trial /= np.linalg.norm(trial)
            Jt, Gt = surrogate(trial, r)
            if Jt > J:
                X, J, G = trial, Jt, Gt
                step = min(step * 1.3, 1.0)
            else:
                step *= 0.5
    return X


@dataclass
class _Validated:
    ratio: float
    certified: bool
    sup: BoundInterval | None


def _validate(Q: HomogeneousPolynomial, cloud: np.ndarray, seed: int) -> _Validated:
    """Rigorous (or, outside the certified regime, heuristic) ratio ``||Q||_1 / ||Q||_inf``."""
    spec = Q.spec
    one = norm_one(Q)
    if math.isinf(spec.q) and spec.n <= CERTIFY_MAX_DIM:
        sup = norm_sup_certified(Q, mesh=CERTIFY_MESH, max_dim=CERTIFY_MAX_DIM)
        if sup.hi <= 0:
            return _Validated(0.0, True, sup)
        return _Validated(one.lo / sup.hi, True, sup)
    heuristic, _ = norm_sup_heuristic(Q, restarts=4, seed=seed)
    on_cloud = float(vector_norms(evaluate_many(Q, cloud), spec.p).max())
    sup_lo = max(heuristic, on_cloud)
    if sup_lo <= 0:
        return _Validated(0.0, False, None)
    return _Validated(one.lo / sup_lo, False, BoundInterval(sup_lo, max(sup_lo, one.hi), HEURISTIC))


def _upper(m: int, spec: SpaceSpec, use_kernel: bool) -> tuple[float, str]:
    cap = sidon_cap(m, spec)
    method = "sqrtN" if spec.d == 1 else "sqrtN*codomain"
    if use_kernel and spec.n == 2 and spec.d == 1 and math.isinf(spec.q) and m in KERNEL_DEGREES:
        from bohrradius.dual_kernel import dual_kernel_upper_bound

        bound = dual_kernel_upper_bound(m).value
        if bound < cap:
            return bound, "dual-kernel"
    return cap, method


def sidon_bounds(m: int, n: int, spec: SpaceSpec | None = None, budget: int = 0, seed: int = 0) -> SidonEstimate:
    """Estimate ``S(m, n)`` for the space pair ``spec`` (default: scalar polydisc).

    ``budget`` counts ascent iterations; it is spent in whole restarts of
    ``ITERATIONS_PER_RESTART`` iterations, restart ``k`` seeded from
    ``(seed, k)``, so a larger budget only adds restarts and never loses the
    incumbent witness.  ``budget = 0`` returns the trivial ``[1, cap]``.
    """
    if spec is None:
        spec = SpaceSpec(n)
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    if spec.n != n:
        raise ValueError(f"spec has n={spec.n}, expected {n}")
    if budget < 0:
        raise ValueError("budget must be non-negative")
    if n == 1:
        # a single monomial: ||x z^m||_1 = ||x|| = ||x z^m||_inf
        return SidonEstimate(m, n, spec, 1.0, 1.0, HomogeneousPolynomial.from_dict(m, spec, {(m,): [1.0] * spec.d}),
                             "sqrtN-cap", seed, budget, True, "sqrtN")
    if m == 1 and spec.d == 1:
        # sup_z |sum c_j z_j| = ||c||_{q'} = sup_z sum |c_j z_j| by phase alignment
        return SidonEstimate(m, n, spec, 1.0, 1.0, None, "exact-m1", seed, budget, True, "exact")
    fallback = HomogeneousPolynomial.from_dict(m, spec, {tuple([m] + [0] * (n - 1)): [1.0] + [0.0] * (spec.d - 1)})
    if budget == 0:
        return SidonEstimate(m, n, spec, 1.0, sidon_cap(m, spec), fallback, "trivial-one", seed, budget, True,
                             "sqrtN" if spec.d == 1 else "sqrtN*codomain")

    upper, upper_method = _upper(m, spec, use_kernel=True)
    cloud = _cloud(m, spec, seed)
    surrogate = _Surrogate(m, spec, cloud)
    shape = (count_multi_indices(m, n), spec.d)
    best, best_Q, best_sup = 1.0, fallback, None
    certified = math.isinf(spec.q) and n <= CERTIFY_MAX_DIM
    restarts = math.ceil(budget / ITERATIONS_PER_RESTART)
    for k in range(restarts):
        rng = np.random.default_rng([seed, k])
        X = _ascend(surrogate, _start(k % 3, shape, rng), ITERATIONS_PER_RESTART)
        Q = HomogeneousPolynomial(m, spec, X)
        v = _validate(Q, cloud, seed + k)
        if v.ratio > best:
            best, best_Q, best_sup = v.ratio, Q, v.sup
    method = "search"
    if best > upper:
        # only possible for an uncertified ratio: the cap is a proven bound
        best, method = upper, "sqrtN-cap"
    return SidonEstimate(m, n, spec, best, upper, best_Q, method, seed, budget,
                         certified or best_Q is fallback, upper_method, best_sup)


chi_mon = sidon_bounds


# --- tables -------------------------------------------------------------------


@dataclass(frozen=True)
class CoefficientBounds:
    """``(L_m, U_m)`` for ``m = 1..m_max``; beyond ``m_max`` the tail policy applies.

    ``cap_factor`` multiplies ``sqrt(N_m(n))`` in the upper tail (1 for
    scalar and Hilbert codomains).  ``heuristic`` marks tables whose lower
    bounds include uncertified witnesses.
    """

    n: int
    m_max: int
    per_m: tuple[tuple[float, float], ...]
    tail_policy: str = TAIL_POLICY
    heuristic: bool = False
    spec: SpaceSpec | None = None
    cap_factor: float = 1.0
    provenance: str = "trivial"
    warnings: tuple[str, ...] = ()
    estimates: tuple[SidonEstimate, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self) -> None:
        per_m = tuple((float(lo), float(hi)) for lo, hi in self.per_m)
        object.__setattr__(self, "per_m", per_m)
        if self.m_max < 1 or len(per_m) != self.m_max:
            raise ValueError(f"need m_max >= 1 and one pair per degree, got m_max={self.m_max}, {len(per_m)} pairs")
        if self.tail_policy != TAIL_POLICY:
            raise ValueError(f"unknown tail policy {self.tail_policy!r}")
        for m, (lo, hi) in enumerate(per_m, start=1):
            cap = sqrt_count(m, self.n) * self.cap_factor * (1 + 1e-15)
            if not 1.0 <= lo <= hi <= cap:
                raise ValueError(f"degree {m}: need 1 <= {lo} <= {hi} <= {cap}")

    @classmethod
    def trivial(cls, n: int, m_max: int, spec: SpaceSpec | None = None) -> CoefficientBounds:
        """``L_m = 1`` and ``U_m = sqrt(N_m(n))`` (``U_1 = 1``): the degenerate table."""
        scalar = spec is None or spec.d == 1
        factor = 1.0 if spec is None else codomain_factor(spec)
        per_m = [(1.0, 1.0 if scalar and m == 1 else (sqrt_count(m, n) if spec is None else sidon_cap(m, spec)))
                 for m in range(1, m_max + 1)]
        return cls(n, m_max, tuple(per_m), spec=spec, cap_factor=factor)

    def truncated(self, k: int) -> CoefficientBounds:
        if not 1 <= k <= self.m_max:
            raise ValueError(f"cannot truncate a table of degree {self.m_max} to {k}")
        return replace(self, m_max=k, per_m=self.per_m[:k], estimates=self.estimates[:k])


def build_coefficient_table(n: int, m_max: int, spec: SpaceSpec | None = None, budget: int = 0, seed: int = 0,
                            cache: SidonCache | str | None = None, include_heuristic: bool = False) -> CoefficientBounds:
    """Sidon bounds for ``m = 1..m_max``, read from and written to ``cache`` when given.

    Heuristic lower bounds are replaced by 1 unless ``include_heuristic``;
    the table is then marked heuristic.  Corrupt cache lines are skipped and
    reported in ``warnings``.
    """
    if spec is None:
        spec = SpaceSpec(n)
    if m_max < 1:
        raise ValueError("m_max must be positive")
    if spec.n != n:
        raise ValueError(f"spec has n={spec.n}, expected {n}")
    store = SidonCache(cache) if isinstance(cache, (str, bytes)) or hasattr(cache, "__fspath__") else cache
    warnings: list[str] = []
    if store is not None:
        store.load()
        if store.corrupt_lines:
            warnings.append(f"cache: skipped {store.corrupt_lines} corrupt line(s)")
    estimates, fresh = [], []
    for m in range(1, m_max + 1):
        rec = store.lookup(m, spec, budget, seed) if store is not None else None
        if rec is not None:
            est = SidonEstimate.from_record(rec, spec)
        else:
            est = sidon_bounds(m, n, spec, budget, seed)
            fresh.append(est.record())
        estimates.append(est)
    if store is not None and fresh:
        store.upsert(fresh)
    heuristic = False
    per_m = []
    for est in estimates:
        lower = est.lower
        if not est.certified:
            if include_heuristic:
                heuristic = True
            else:
                lower = 1.0
        per_m.append((lower, est.upper))
    provenance = "trivial" if budget == 0 else f"search(budget={budget},seed={seed})"
    if store is not None:
        provenance += f"+cache({store.path.name})"
    return CoefficientBounds(n, m_max, tuple(per_m), TAIL_POLICY, heuristic, spec, codomain_factor(spec),
                             provenance, tuple(warnings), tuple(estimates))


# --- derived constants ----------------------------------------------------------


def homogeneous_bohr_radius(m: int, lam: float, chi: BoundInterval) -> BoundInterval:
    """``K^n_m = (lam / chi)^(1/m)`` as an interval, clamped to ``[0, 1]`` with status ``clamped``."""
    if m < 1:
        raise ValueError("m must be positive")
    if not lam >= 1.0:
        raise ValueError(f"lambda must be >= 1, got {lam}")
    if chi.lo < 1.0:
        raise ValueError(f"chi.lo = {chi.lo} < 1 is impossible for a Sidon constant")
    lo = math.nextafter((lam / chi.hi) ** (1.0 / m), -math.inf)
    hi = math.nextafter((lam / chi.lo) ** (1.0 / m), math.inf)
    if m == 1 and lam / chi.lo == 1.0:
        hi = 1.0
    if lam / chi.hi == 1.0:
        lo = 1.0
    status = chi.status
    meta: dict[str, Any] = {"clamp": False}
    if hi > 1.0:
        meta = {"clamp": True, "unclamped": (lo, hi)}
        lo, hi, status = min(lo, 1.0), 1.0, CLAMPED
    return BoundInterval(lo, hi, status, meta)


def gamma_capital(table: CoefficientBounds) -> BoundInterval:
    """Enclosure of ``Gamma_n = sup_m S(m, n)^(1/m)``.

    Beyond the table, ``(c sqrt(N_m(n)))^(1/m)`` is non-increasing in ``m``:
    ``log N_m(n) / m`` is the mean of the decreasing sequence
    ``log((n-1+k)/k)``, ``k = 1..m``, and ``c^(1/m)`` decreases for ``c >= 1``.
    So the tail supremum is attained at ``m_max + 1``.
    """
    lower = max(lo ** (1.0 / m) for m, (lo, _) in enumerate(table.per_m, start=1))
    upper = max(hi ** (1.0 / m) for m, (_, hi) in enumerate(table.per_m, start=1))
    k = table.m_max + 1
    tail = (sqrt_count(k, table.n) * table.cap_factor) ** (1.0 / k)
    upper = max(upper, tail)
    lo = 1.0 if lower == 1.0 else math.nextafter(lower, -math.inf)
    hi = 1.0 if upper == 1.0 else math.nextafter(upper * (1 + 2**-50), math.inf)
    return BoundInterval(lo, hi, HEURISTIC if table.heuristic else CERTIFIED, {"tail_degree": k})
