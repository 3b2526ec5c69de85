"""Command line interface: ``bohrradius {beta,gamma,sidon,table,verify}``.

Rows are written as CSV (header row) or as a JSON array of objects.  Every
real is printed with 12 significant digits; interval ends are rounded
outwards so a printed enclosure still encloses.  Exit status: 0 success,
2 configuration error, 3 numerical non-convergence, 4 cache I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass, field
from decimal import ROUND_CEILING, ROUND_FLOOR, ROUND_HALF_EVEN, Context, Decimal
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from bohrradius.cache import CACHE_ENV, CacheIOError, SidonCache, default_cache_path
from bohrradius.radii import NonConvergenceError, SeriesSpec, bohr_bounds_report, solve_root
from bohrradius.sidon import CoefficientBounds, SidonEstimate, build_coefficient_table, sidon_bounds
from bohrradius.spaces import SpaceSpec, format_exponent, parse_exponent
from bohrradius.verify import check_bohr_sample, corner_strictness_check, moebius_family, wiener_bound_check

EXIT_OK, EXIT_CONFIG, EXIT_NONCONVERGENCE, EXIT_CACHE = 0, 2, 3, 4
DIGITS = 12
COMMANDS = ("beta", "gamma", "sidon", "table", "verify")


class ConfigError(ValueError):
    pass


# --- number formatting -------------------------------------------------------------


class Down(float):
    """Marks a lower interval end: printed rounded towards -inf."""


class Up(float):
    """Marks an upper interval end: printed rounded towards +inf."""


def format_number(x: Any) -> Any:
    if x is None:
        return ""
    if isinstance(x, (bool, str, int, np.integer)):
        return int(x) if isinstance(x, np.integer) else x
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if math.isnan(x):
        return "nan"
    rounding = ROUND_FLOOR if isinstance(x, Down) else ROUND_CEILING if isinstance(x, Up) else ROUND_HALF_EVEN
    d = Context(prec=DIGITS, rounding=rounding).plus(Decimal(float(x)))
    return format(float(d), f".{DIGITS}g")


def _json_value(x: Any) -> Any:
    if isinstance(x, float) and math.isfinite(x):
        return float(format_number(x))
    if x is None or isinstance(x, (bool, int, str)):
        return x
    return format_number(x)


def emit(rows: list[dict[str, Any]], fmt: str, out) -> None:
    if fmt == "json":
        json.dump([{k: _json_value(v) for k, v in row.items()} for row in rows], out, indent=1)
        out.write("\n")
        return
    if not rows:
        return
    writer = csv.DictWriter(out, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    writer.writerows({k: format_number(v) for k, v in row.items()} for row in rows)


# --- configuration -------------------------------------------------------------------


def parse_int_range(text: str) -> list[int]:
    """``"2..20"`` (inclusive), ``"3"`` or ``"1,4,9"``."""
    values: list[int] = []
    for part in str(text).split(","):
        part = part.strip()
        if ".." in part:
            a, b = part.split("..", 1)
            lo, hi = int(a), int(b)
            if hi < lo:
                raise ConfigError(f"empty range {part!r}")
            values.extend(range(lo, hi + 1))
        elif part:
            values.append(int(part))
    if not values:
        raise ConfigError(f"empty range {text!r}")
    return values


@dataclass
class RunConfig:
    command: str
    n: list[int]
    lambdas: list[float] = field(default_factory=lambda: [1.0])
    q: float = math.inf
    d: int = 1
    p: float = 2.0
    m: list[int] = field(default_factory=lambda: [2])
    m_max: int = 1
    budget: int = 0
    tol: float = 1e-12
    seed: int = 0
    cache_path: Path | None = None
    fmt: str = "csv"
    k_disk: float | None = None
    check: str = "bohr"
    radii: list[float] = field(default_factory=lambda: [1 / 3, 0.35])
    grid: int = 1000
    samples: int = 1000

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if not self.tol > 0:
            raise ConfigError("--tol must be positive")
        if self.budget < 0:
            raise ConfigError("--budget must be non-negative")
        if not self.n or min(self.n) < 1:
            raise ConfigError("--n must be at least 1")
        if not self.lambdas or min(self.lambdas) < 1.0:
            raise ConfigError("--lambda values must be >= 1")
        if self.d < 1:
            raise ConfigError("--d must be at least 1")
        if self.m_max < 1 or not self.m or min(self.m) < 1:
            raise ConfigError("--m and --m-max must be at least 1")
        if self.fmt not in ("csv", "json"):
            raise ConfigError("--format must be csv or json")
        if self.k_disk is not None and not 0.0 < self.k_disk <= 1.0:
            raise ConfigError("--k-disk must lie in (0, 1]")

    def spec(self, n: int) -> SpaceSpec:
        return SpaceSpec(n, self.q, self.d, self.p)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bohrradius", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", default="2", help="dimension, range 'a..b' or list 'a,b'")
    common.add_argument("--lambda", dest="lambdas", type=float, nargs="+", default=[1.0])
    common.add_argument("--q", default="inf", help="domain exponent, number or 'inf'")
    common.add_argument("--d", type=int, default=1, help="codomain dimension (1 = scalar)")
    common.add_argument("--p", default="2", help="codomain exponent, number or 'inf'")
    common.add_argument("--m", default="2", help="degree, range or list (sidon)")
    common.add_argument("--m-max", type=int, default=1)
    common.add_argument("--budget", type=int, default=0, help="search iterations per Sidon estimate")
    common.add_argument("--tol", type=float, default=1e-12)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--cache", default=None, help=f"cache file (default: ${CACHE_ENV} if set)")
    common.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
    for name, helptext in (("beta", "enclosures of beta_n"),
                           ("gamma", "enclosures of gamma_n from a Sidon table"),
                           ("sidon", "Sidon constant estimates"),
                           ("table", "comparison of beta_n, gamma_n and the reference curve"),
                           ("verify", "verdicts of the Bohr, Wiener and corner checks")):
        cmd = sub.add_parser(name, parents=[common], help=helptext)
        if name == "gamma":
            cmd.add_argument("--k-disk", type=float, default=None, help="K(D, X, lambda) for the upper bound")
        if name == "verify":
            cmd.add_argument("--check", choices=("bohr", "wiener", "corner"), default="bohr")
            cmd.add_argument("--r", dest="radii", type=float, nargs="+", default=[1 / 3, 0.35])
            cmd.add_argument("--grid", type=int, default=1000, help="number of family parameters")
            cmd.add_argument("--samples", type=int, default=1000)
    return parser


def config_from_args(argv: Sequence[str] | None) -> RunConfig:
    args = build_parser().parse_args(argv)
    try:
        cache = args.cache
        if cache is None and CACHE_ENV in os.environ:
            cache = default_cache_path()
        cfg = RunConfig(
            command=args.command, n=parse_int_range(args.n), lambdas=list(args.lambdas),
            q=parse_exponent(args.q), d=args.d, p=parse_exponent(args.p), m=parse_int_range(args.m),
            m_max=args.m_max, budget=args.budget, tol=args.tol, seed=args.seed,
            cache_path=None if cache is None else Path(cache), fmt=args.fmt,
            k_disk=getattr(args, "k_disk", None), check=getattr(args, "check", "bohr"),
            radii=list(getattr(args, "radii", [1 / 3, 0.35])), grid=getattr(args, "grid", 1000),
            samples=getattr(args, "samples", 1000),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    cfg.validate()
    return cfg


# --- commands --------------------------------------------------------------------------


@dataclass
class RunResult:
    rows: list[dict[str, Any]]
    warnings: list[str] = field(default_factory=list)


def _cache(cfg: RunConfig) -> SidonCache | None:
    return None if cfg.cache_path is None else SidonCache(cfg.cache_path)


def _table(cfg: RunConfig, n: int, warnings: list[str]) -> CoefficientBounds:
    if cfg.budget == 0 and cfg.cache_path is None:
        return CoefficientBounds.trivial(n, cfg.m_max, cfg.spec(n))
    table = build_coefficient_table(n, cfg.m_max, cfg.spec(n), cfg.budget, cfg.seed, _cache(cfg))
    warnings.extend(table.warnings)
    return table


def run_beta(cfg: RunConfig) -> RunResult:
    rows = []
    for n in cfg.n:
        for lam in cfg.lambdas:
            beta = solve_root(SeriesSpec(n, lam), cfg.tol)
            rows.append({"n": n, "lambda": lam, "beta_lo": Down(beta.lo), "beta_hi": Up(beta.hi),
                         "iterations": beta.meta["iterations"]})
    return RunResult(rows)


def run_gamma(cfg: RunConfig) -> RunResult:
    rows, warnings = [], []
    for n in cfg.n:
        table = _table(cfg, n, warnings)
        for lam in cfg.lambdas:
            rep = bohr_bounds_report(n, lam, cfg.spec(n), table, cfg.k_disk, cfg.tol)
            rows.append({
                "n": n, "lambda": lam, "beta_lo": Down(rep.beta.lo), "beta_hi": Up(rep.beta.hi),
                "gamma_lo": Down(rep.gamma_lo.lo), "gamma_hi": Up(rep.gamma_hi.hi),
                "tail_m_max": table.m_max, "table_provenance": table.provenance,
                "K_lower": Down(rep.K_lower), "K_upper": None if rep.K_upper is None else Up(rep.K_upper),
                "flags": ";".join(rep.flags),
            })
    return RunResult(rows, warnings)


def _sidon_estimate(cfg: RunConfig, m: int, n: int, store: SidonCache | None) -> SidonEstimate:
    spec = cfg.spec(n)
    if store is not None:
        rec = store.lookup(m, spec, cfg.budget, cfg.seed)
        if rec is not None:
            return SidonEstimate.from_record(rec, spec)
    est = sidon_bounds(m, n, spec, cfg.budget, cfg.seed)
    if store is not None:
        store.upsert([est.record()])
    return est


def run_sidon(cfg: RunConfig) -> RunResult:
    rows, warnings = [], []
    store = _cache(cfg)
    if store is not None:
        store.load()
        if store.corrupt_lines:
            warnings.append(f"cache: skipped {store.corrupt_lines} corrupt line(s)")
    for n in cfg.n:
        for m in cfg.m:
            est = _sidon_estimate(cfg, m, n, store)
            rows.append({"m": m, "n": n, "lower": Down(est.lower), "upper": Up(est.upper), "method": est.method,
                         "witness_hash": est.witness_hash if est.witness is not None or est.method != "exact-m1"
                         else "-", "certified": str(est.certified).lower(), "upper_method": est.upper_method})
    return RunResult(rows, warnings)


def run_table(cfg: RunConfig) -> RunResult:
    rows, warnings = [], []
    for n in cfg.n:
        table = _table(cfg, n, warnings)
        for lam in cfg.lambdas:
            rep = bohr_bounds_report(n, lam, cfg.spec(n), table, None, cfg.tol)
            ref = rep.asymptotic_ref
            rows.append({
                "n": n, "q": format_exponent(cfg.q), "lambda": lam,
                "beta_lo": Down(rep.beta.lo), "beta_hi": Up(rep.beta.hi),
                "gamma_lo": Down(rep.gamma_lo.lo), "gamma_hi": Up(rep.gamma_hi.hi),
                "asymptotic_ref": ref,
                "ratio_lo": None if not ref else Down(rep.beta.lo / ref),
                "ratio_hi": None if not ref else Up(rep.beta.hi / ref),
            })
    return RunResult(rows, warnings)


def run_verify(cfg: RunConfig) -> RunResult:
    rows = []
    if cfg.check in ("bohr", "wiener"):
        params = [(k + 1) / (cfg.grid + 1) for k in range(cfg.grid)]
        for a in params:
            f = moebius_family(a, 60)
            if cfg.check == "bohr":
                for r in cfg.radii:
                    for lam in cfg.lambdas:
                        v = check_bohr_sample(f, r, lam, ("declared", 1.0))
                        rows.append({"check": "bohr", "a": a, "r": r, "lambda": lam, "verdict": v.kind,
                                     "certified": str(v.certified).lower(), "margin": v.margin})
            else:
                v = wiener_bound_check(f, 1, 1.0, samples=16, seed=cfg.seed)
                rows.append({"check": "wiener", "a": a, "m": 1, "verdict": v.kind,
                             "certified": str(v.certified).lower(), "margin": v.margin})
        return RunResult(rows)
    from bohrradius.polynorms import HomogeneousPolynomial

    for n in cfg.n:
        spec = cfg.spec(n)
        for m in cfg.m:
            rng = np.random.default_rng([cfg.seed, n, m])
            Q = HomogeneousPolynomial.random(m, spec, rng)
            z = rng.uniform(0.2, 1.0, n) * np.exp(2j * np.pi * rng.random(n))
            v = corner_strictness_check(Q, z, samples=cfg.samples, seed=cfg.seed)
            rows.append({"check": "corner", "n": n, "m": m, "verdict": v.kind,
                         "certified": str(v.certified).lower(), "margin": v.margin})
    return RunResult(rows)


RUNNERS = {"beta": run_beta, "gamma": run_gamma, "sidon": run_sidon, "table": run_table, "verify": run_verify}


def run(cfg: RunConfig) -> RunResult:
    cfg.validate()
    return RUNNERS[cfg.command](cfg)


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        cfg = config_from_args(argv)
    except ConfigError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_CONFIG
    except SystemExit as exc:  # argparse
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        result = run(cfg)
    except NonConvergenceError as exc:
        print(f"error: numerical non-convergence: {exc}", file=err)
        return EXIT_NONCONVERGENCE
    except CacheIOError as exc:
        print(f"error: cache I/O failure: {exc}", file=err)
        return EXIT_CACHE
    except ValueError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_CONFIG
    buffer = io.StringIO()
    emit(result.rows, cfg.fmt, buffer)
    out.write(buffer.getvalue())
    for w in result.warnings:
        print(f"warning: {w}", file=err)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
