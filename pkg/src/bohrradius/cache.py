"""Line-delimited JSON store of Sidon estimates.

One JSON object per line with at least the fields ``m, n, q, d, p, lower,
upper, method, budget, seed, created_at``; ``q`` and ``p`` are numbers or
the string ``"inf"``.  Unknown extra fields are kept.  Writers take a file
lock, re-read the file, merge and replace it atomically, so a writer that
loses a race still ends up with the tighter of the competing records.
"""

from __future__ import annotations

import json
import logging
import os
import tempfile
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Iterable

from filelock import FileLock

from bohrradius.spaces import SpaceSpec, format_exponent, parse_exponent

log = logging.getLogger(__name__)

REQUIRED_FIELDS = ("m", "n", "q", "d", "p", "lower", "upper", "method", "budget", "seed", "created_at")
CACHE_ENV = "BOHRRADIUS_CACHE"


class CacheIOError(OSError):
    """The cache file could not be read or written."""


def default_cache_path() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "bohrradius" / "sidon.jsonl"


def spec_key(spec: SpaceSpec) -> tuple:
    return (spec.n, format_exponent(spec.q), spec.d, format_exponent(spec.p))


def record_key(rec: dict[str, Any]) -> tuple:
    """Exact key ``(m, n, q, d, p, budget, seed)``."""
    return (int(rec["m"]), int(rec["n"]), format_exponent(parse_exponent(rec["q"])), int(rec["d"]),
            format_exponent(parse_exponent(rec["p"])), int(rec["budget"]), int(rec["seed"]))


def _validate(rec: Any) -> dict[str, Any]:
    if not isinstance(rec, dict):
        raise ValueError("record is not an object")
    missing = [f for f in REQUIRED_FIELDS if f not in rec]
    if missing:
        raise ValueError(f"missing fields {missing}")
    record_key(rec)
    lower, upper = float(rec["lower"]), float(rec["upper"])
    if not 1.0 <= lower <= upper:
        raise ValueError("bounds out of order")
    return rec


def tighter(a: dict[str, Any], b: dict[str, Any]) -> dict[str, Any]:
    """Merge two records of the same key: larger lower bound, smaller upper bound."""
    base = dict(a)
    if float(b["lower"]) > float(a["lower"]):
        for k in ("lower", "method", "certified", "witness_hash"):
            if k in b:
                base[k] = b[k]
            else:
                base.pop(k, None)
    if float(b["upper"]) < float(a["upper"]):
        base["upper"] = b["upper"]
        if "upper_method" in b:
            base["upper_method"] = b["upper_method"]
    return base


@dataclass
class SidonCache:
    path: Path
    corrupt_lines: int = 0
    _records: dict[tuple, dict[str, Any]] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        self.path = Path(self.path)

    @property
    def lock(self) -> FileLock:
        return FileLock(str(self.path) + ".lock")

    def _read_unlocked(self) -> dict[tuple, dict[str, Any]]:
        records: dict[tuple, dict[str, Any]] = {}
        corrupt = 0
        if not self.path.exists():
            self.corrupt_lines = 0
            return records
        try:
            text = self.path.read_text(encoding="utf-8")
        except OSError as exc:
            raise CacheIOError(f"cannot read cache {self.path}: {exc}") from exc
        for line in text.splitlines():
            if not line.strip():
                continue
            try:
                rec = _validate(json.loads(line))
            except (ValueError, TypeError, KeyError):
                corrupt += 1
                continue
            key = record_key(rec)
            records[key] = tighter(records[key], rec) if key in records else rec
        if corrupt:
            log.warning("skipped %d corrupt line(s) in %s", corrupt, self.path)
        self.corrupt_lines = corrupt
        return records

    def load(self) -> dict[tuple, dict[str, Any]]:
        try:
            with self.lock:
                self._records = self._read_unlocked()
        except OSError as exc:
            raise CacheIOError(f"cannot lock cache {self.path}: {exc}") from exc
        return self._records

    def records(self) -> list[dict[str, Any]]:
        return [dict(r) for _, r in sorted(self.load().items(), key=lambda kv: repr(kv[0]))]

    def lookup(self, m: int, spec: SpaceSpec, budget: int, seed: int) -> dict[str, Any] | None:
        if not self._records:
            self.load()
        return self._records.get((m, *spec_key(spec), budget, seed))

    def query(self, m: int, spec: SpaceSpec) -> dict[str, Any] | None:
        """Tightest merge of every record for ``(m, spec)`` regardless of budget and seed."""
        matches = [r for k, r in self.load().items() if k[:5] == (m, *spec_key(spec))]
        if not matches:
            return None
        merged = matches[0]
        for rec in matches[1:]:
            merged = tighter(merged, rec)
        return merged

    def upsert(self, records: Iterable[dict[str, Any]]) -> None:
        new = []
        for rec in records:
            rec = dict(rec)
            rec.setdefault("created_at", datetime.now(timezone.utc).isoformat(timespec="seconds"))
            new.append(_validate(rec))
        try:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self.lock:
                current = self._read_unlocked()
                for rec in new:
                    key = record_key(rec)
                    current[key] = tighter(current[key], rec) if key in current else rec
                fd, tmp = tempfile.mkstemp(dir=self.path.parent, prefix=self.path.name, suffix=".tmp")
                try:
                    with os.fdopen(fd, "w", encoding="utf-8") as fh:
                        for key in sorted(current, key=repr):
                            fh.write(json.dumps(current[key], sort_keys=True) + "\n")
                    os.replace(tmp, self.path)
                except BaseException:
                    if os.path.exists(tmp):
                        os.unlink(tmp)
                    raise
                self._records = current
        except OSError as exc:
            raise CacheIOError(f"cannot write cache {self.path}: {exc}") from exc
