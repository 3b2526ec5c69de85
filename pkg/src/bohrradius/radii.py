"""Certified evaluation of the Bohr-radius series and their roots.

``H_n(x) = x + sum_{m>=2} sqrt(N_m(n)) x^m`` has root ``beta_n`` of
``H_n(x) = lambda/2``; replacing ``sqrt(N_m(n))`` by the Sidon constants
gives ``gamma_n``.  Sidon constants are only known up to an interval, so
``gamma_n`` is enclosed by the roots of the series built from the upper and
from the lower coefficient bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any

import numpy as np

from bohrradius.intervals import CERTIFIED, HEURISTIC, BoundInterval, gamma_factor
from bohrradius.spaces import SpaceSpec

if TYPE_CHECKING:
    from bohrradius.sidon import CoefficientBounds

MAX_TERMS = 4_000_000
_TINY = 1e-300


class NonConvergenceError(ArithmeticError):
    """A series or root could not be enclosed to the requested tolerance."""


@dataclass(frozen=True)
class SeriesSpec:
    """Coefficients of ``x + sum_{m>=2} c_m x^m`` and the right-hand side ``lam/2``.

    ``source="sqrtN"`` uses ``c_m = sqrt(N_m(n))``.  ``source="table"`` takes
    ``c_m`` from ``table`` (``side="upper"`` or ``"lower"``) for
    ``m <= table.m_max`` and beyond that the worst case for the side:
    ``sqrt(N_m(n))`` for the upper side and 1 for the lower side.  The
    coefficient of ``x`` is 1 in every mode.
    """

    n: int
    lam: float = 1.0
    source: str = "sqrtN"
    table: CoefficientBounds | None = None
    side: str = "upper"

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be positive")
        if not self.lam >= 1.0:
            raise ValueError(f"lambda must be >= 1, got {self.lam}")
        if self.source not in ("sqrtN", "table"):
            raise ValueError(f"unknown coefficient source {self.source!r}")
        if self.source == "table":
            if self.table is None:
                raise ValueError("table source needs a CoefficientBounds table")
            if self.table.n != self.n:
                raise ValueError(f"table is for n={self.table.n}, series for n={self.n}")
            if self.side not in ("upper", "lower"):
                raise ValueError(f"side must be 'upper' or 'lower', got {self.side!r}")

    @property
    def table_degree(self) -> int:
        return self.table.m_max if self.source == "table" else 1

    @property
    def tail_factor(self) -> float:
        """Multiplier of ``sqrt(N_m(n))`` in the upper tail (the table's codomain factor)."""
        return self.table.cap_factor if self.source == "table" and self.side == "upper" else 1.0

    @property
    def sqrt_tail(self) -> bool:
        """Whether coefficients beyond the table are ``sqrt(N_m(n))`` (else 1)."""
        return self.source == "sqrtN" or self.side == "upper"

    def coefficients(self, M: int) -> np.ndarray:
        """``c_1..c_M`` as floats (index 0 holds ``c_1``)."""
        c = np.empty(M)
        c[0] = 1.0
        if M > 1:
            m = np.arange(2, M + 1)
            if self.sqrt_tail:
                c[1:] = np.sqrt(np.cumprod((self.n + m - 1.0) / m) * self.n) * self.tail_factor
            else:
                c[1:] = 1.0
        if self.source == "table":
            side = 1 if self.side == "upper" else 0
            for m, pair in enumerate(self.table.per_m[:M], start=1):
                c[m - 1] = pair[side]
        return c


def _terms(s: SeriesSpec, x: float, M: int) -> np.ndarray:
    """``c_m x^m`` for ``m = 1..M`` computed so that each has relative error ``<= gamma_{6m}``."""
    m = np.arange(1, M + 1)
    if s.sqrt_tail:
        # c_m x^m = prod_{k<=m} x sqrt((n+k-1)/k), with c_1 replaced by 1 below
        terms = np.cumprod(x * np.sqrt((s.n + m - 1.0) / m))
        terms[0] = x
        if s.tail_factor != 1.0:
            terms[1:] *= s.tail_factor
    else:
        terms = np.cumprod(np.full(M, x))
    K = min(s.table_degree, M) if s.source == "table" else 0
    if K:
        powers = np.cumprod(np.full(K, x))
        c = s.coefficients(K)
        terms[:K] = c * powers
    return terms


def _tail_bound(s: SeriesSpec, x: float, M: int, last_term: float) -> float:
    """Bound on ``sum_{m>M} c_m x^m`` from the geometric majorant of the coefficient ratios."""
    if x == 0.0:
        return 0.0
    if not s.sqrt_tail:
        return x ** (M + 1) / (1.0 - x) * (1 + gamma_factor(M + 8))
    # c_{m+1}/c_m = sqrt((n+m)/(m+1)) decreases in m, so from M+1 on every ratio
    # is at most rho = sqrt((n+M+1)/(M+2)); the first tail term is bounded via rho_M.
    rho_first = math.sqrt((s.n + M) / (M + 1.0))
    rho = math.sqrt((s.n + M + 1.0) / (M + 2.0))
    if x * rho >= 1.0:
        return math.inf
    first = last_term * x * rho_first
    return first / (1.0 - x * rho) * (1 + gamma_factor(6 * M + 16))


def eval_series(s: SeriesSpec, x: float, tol: float = 1e-12) -> BoundInterval:
    """Certified enclosure of ``x + sum_{m>=2} c_m x^m`` for ``0 <= x < 1``.

    The partial sum is widened by a rigorous floating point error bound and
    the remainder by a geometric majorant, with the truncation degree doubled
    until the remainder is below ``tol/2``.
    """
    if not 0.0 <= x < 1.0:
        raise ValueError(f"the series diverges at x={x}; need 0 <= x < 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if x == 0.0:
        return BoundInterval.exact(0.0, terms=0)
    # the last summed term must lie beyond the table for the tail majorant
    M = max(32, s.table_degree + 1)
    while True:
        terms = _terms(s, x, M)
        tail = _tail_bound(s, x, M, float(terms[-1]))
        if tail <= tol / 2:
            break
        if M >= MAX_TERMS:
            raise NonConvergenceError(f"series at x={x} needs more than {MAX_TERMS} terms for tol={tol}")
        M = min(2 * M, MAX_TERMS)
    total = float(np.sum(terms))
    rel = 2 * gamma_factor(7 * M + 16)
    lo = total * (1 - rel) - M * _TINY
    hi = total * (1 + rel) + M * _TINY + tail
    status = CERTIFIED
    if s.source == "table" and s.table.heuristic:
        status = HEURISTIC
    return BoundInterval(math.nextafter(max(lo, 0.0), -math.inf), math.nextafter(hi, math.inf), status,
                         {"terms": M, "tail": tail})


def solve_root(s: SeriesSpec, tol: float = 1e-12) -> BoundInterval:
    """Enclosure of width ``<= tol`` of the unique root of ``series(x) = lam/2`` in ``(0, 1)``.

    Bisection keeps the invariant ``series(lo) < lam/2 < series(hi)`` using
    only certified evaluations.  When an evaluation cannot decide the sign,
    the root is within ``|series(mid) - lam/2|`` of ``mid`` because the
    series has slope at least 1, which closes the bracket.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    target = s.lam / 2.0
    eval_tol = max(tol / 4.0, 1e-15)
    lo, hi = 0.0, s.lam / (s.lam + 2.0)
    # every coefficient is >= 1, so series(x) >= x/(1-x) and the root is <= lam/(lam+2)
    iterations = 0
    status = CERTIFIED

    def decide(x: float) -> tuple[int, BoundInterval]:
        e = eval_series(s, x, eval_tol)
        if e.lo > target:
            return 1, e
        if e.hi < target:
            return -1, e
        return 0, e

    sign, e = decide(hi)
    if e.status != CERTIFIED:
        status = HEURISTIC
    for _ in range(60):
        if sign >= 0:
            break
        lo, hi = hi, 0.5 * (hi + 1.0)
        sign, e = decide(hi)
    else:
        raise NonConvergenceError("could not bracket the root")
    if sign == 0:
        w = max(e.hi - target, target - e.lo)
        lo, hi = max(lo, hi - w), min(1.0, hi + w)
    while hi - lo > tol and sign != 0:
        iterations += 1
        if iterations > 400:
            raise NonConvergenceError("bisection did not converge")
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        sign, e = decide(mid)
        if sign > 0:
            hi = mid
        elif sign < 0:
            lo = mid
        else:
            w = max(e.hi - target, target - e.lo)
            lo, hi = max(lo, mid - w), min(hi, mid + w)
    return BoundInterval(lo, hi, status, {"iterations": iterations})


def solve_gamma_bounds(n: int, lam: float, table: CoefficientBounds,
                       tol: float = 1e-12) -> tuple[BoundInterval, BoundInterval]:
    """``(gamma_lo, gamma_hi)``: roots with the upper and with the lower coefficient bounds.

    Larger coefficients give a smaller root, so ``gamma_lo.lo <= gamma_n <= gamma_hi.hi``.
    """
    gamma_lo = solve_root(SeriesSpec(n, lam, "table", table, "upper"), tol)
    gamma_hi = solve_root(SeriesSpec(n, lam, "table", table, "lower"), tol)
    return gamma_lo, gamma_hi


def asymptotic_reference(n: int, q: float | str) -> float:
    """Reference curve ``(ln n / n)^(1 - 1/min(q, 2))`` (natural logarithm)."""
    from bohrradius.spaces import parse_exponent

    if n < 2:
        raise ValueError("the reference curve needs n >= 2")
    q = parse_exponent(q)
    exponent = 1.0 - 1.0 / min(q, 2.0)
    return (math.log(n) / n) ** exponent


@dataclass
class BohrReport:
    n: int
    lam: float
    spec: SpaceSpec
    beta: BoundInterval
    gamma_lo: BoundInterval
    gamma_hi: BoundInterval
    K_lower: float
    K_upper: float | None
    asymptotic_ref: float | None
    Gamma: BoundInterval
    homogeneous_upper: float
    flags: list[str] = field(default_factory=list)
    tail_sensitivity: dict[str, Any] = field(default_factory=dict)

    def row(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "lambda": self.lam,
            "beta_lo": self.beta.lo,
            "beta_hi": self.beta.hi,
            "gamma_lo": self.gamma_lo.lo,
            "gamma_hi": self.gamma_hi.hi,
            "K_lower": self.K_lower,
            "K_upper": self.K_upper,
            "asymptotic_ref": self.asymptotic_ref,
        }


def bohr_bounds_report(n: int, lam: float, spec: SpaceSpec, table: CoefficientBounds,
                       K_disk: float | None = None, tol: float = 1e-12) -> BohrReport:
    """Assemble ``beta_n < gamma_n <= K^n(B, X, lam) <= ...`` for one ``(n, lam)``.

    ``K_upper`` is only reported when ``K_disk = K(D, X, lam)`` is supplied;
    it is the smallest of ``gamma_hi / K_disk``, ``K_disk`` itself and the
    homogeneous radii ``(lam / L_m)^(1/m)``.
    """
    from bohrradius.sidon import gamma_capital

    if K_disk is not None and not 0.0 < K_disk <= 1.0:
        raise ValueError(f"K_disk must lie in (0, 1], got {K_disk}")
    if spec.n != n:
        raise ValueError("spec.n and n disagree")
    beta = solve_root(SeriesSpec(n, lam), tol)
    gamma_lo, gamma_hi = solve_gamma_bounds(n, lam, table, tol)
    Gamma = gamma_capital(table)
    flags: list[str] = []
    if lam >= 2.0:
        flags.append("lambda>=2")
    slack = 2 * tol
    checks = {
        "beta<=gamma_lo": beta.lo <= gamma_lo.hi + slack,
        "gamma_lo<=gamma_hi": gamma_lo.lo <= gamma_hi.hi + slack,
        "gamma_hi<=lam/(lam+2)": gamma_hi.lo <= lam / (lam + 2.0) + slack,
        "1/(3 Gamma)<gamma": 1.0 / (3.0 * Gamma.hi) <= gamma_lo.hi + slack,
    }
    # a failure here means the table's bounds contradict the scalar theory
    # (possible for vector-valued tables, whose first coefficient may exceed 1)
    flags.extend(f"violated:{name}" for name, ok in checks.items() if not ok)

    homogeneous = 1.0
    for m, (low, _) in enumerate(table.per_m, start=1):
        homogeneous = min(homogeneous, (lam / low) ** (1.0 / m))
    K_upper = None
    if K_disk is not None:
        K_upper = min(gamma_hi.hi / K_disk, K_disk, homogeneous)
    ref = asymptotic_reference(n, spec.q) if n >= 2 else None

    sensitivity: dict[str, Any] = {}
    if table.m_max > 2:
        shorter = table.truncated(table.m_max - 2)
        lo2, hi2 = solve_gamma_bounds(n, lam, shorter, tol)
        sensitivity = {"m_max": table.m_max - 2, "gamma_lo": lo2.lo, "gamma_hi": hi2.hi}
    return BohrReport(n, lam, spec, beta, gamma_lo, gamma_hi, gamma_lo.lo, K_upper, ref, Gamma,
                      homogeneous, flags, sensitivity)
