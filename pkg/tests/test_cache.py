from __future__ import annotations

import json
import os

import pytest

from bohrradius.cache import CacheIOError, SidonCache, default_cache_path, record_key, tighter
from bohrradius.sidon import sidon_bounds
from bohrradius.spaces import INF, SpaceSpec


def rec(m=2, n=2, lower=1.2, upper=1.6, seed=0, budget=100, **extra):
    base = {"m": m, "n": n, "q": "inf", "d": 1, "p": 2, "lower": lower, "upper": upper,
            "method": "search", "budget": budget, "seed": seed, "created_at": "2026-01-01T00:00:00+00:00"}
    base.update(extra)
    return base


def test_round_trip(tmp_path):
    cache = SidonCache(tmp_path / "s.jsonl")
    records = [rec(), rec(m=3, lower=1.1, upper=2.0), rec(n=3, seed=4)]
    cache.upsert(records)
    back = SidonCache(tmp_path / "s.jsonl").records()
    key = lambda r: json.dumps(r, sort_keys=True)
    assert sorted(map(key, back)) == sorted(map(key, records))


def test_estimate_round_trip(tmp_path):
    cache = SidonCache(tmp_path / "s.jsonl")
    est = sidon_bounds(2, 2, SpaceSpec(2, 3.0, 2, INF), budget=200, seed=5)
    cache.upsert([est.record()])
    got = cache.lookup(2, est.spec, 200, 5)
    assert got["lower"] == est.lower and got["upper"] == est.upper
    assert got["q"] == 3 and got["p"] == "inf"
    line = (tmp_path / "s.jsonl").read_text().splitlines()[0]
    assert json.loads(line)["p"] == "inf"


def test_upsert_worse_bounds_keeps_record(tmp_path):
    path = tmp_path / "s.jsonl"
    cache = SidonCache(path)
    cache.upsert([rec(lower=1.3, upper=1.5)])
    before = path.read_text()
    cache.upsert([rec(lower=1.1, upper=1.7, created_at="2027-01-01T00:00:00+00:00")])
    assert path.read_text() == before


def test_upsert_is_idempotent(tmp_path):
    path = tmp_path / "s.jsonl"
    cache = SidonCache(path)
    cache.upsert([rec()])
    before = path.read_text()
    cache.upsert([rec()])
    assert path.read_text() == before


def test_tighter_merges_both_ends():
    merged = tighter(rec(lower=1.2, upper=1.5, upper_method="a"), rec(lower=1.3, upper=1.6, upper_method="b"))
    assert (merged["lower"], merged["upper"], merged["upper_method"]) == (1.3, 1.5, "a")


def test_same_key_different_seed(tmp_path):
    cache = SidonCache(tmp_path / "s.jsonl")
    cache.upsert([rec(seed=1, lower=1.3, upper=1.7), rec(seed=2, lower=1.2, upper=1.5)])
    assert len(cache.records()) == 2
    best = cache.query(2, SpaceSpec(2))
    assert (best["lower"], best["upper"]) == (1.3, 1.5)
    assert cache.query(5, SpaceSpec(2)) is None


def test_corrupt_lines_skipped(tmp_path, caplog):
    path = tmp_path / "s.jsonl"
    good = json.dumps(rec())
    path.write_text("\n".join([good, "{oops", json.dumps({"m": 2}), json.dumps(rec(lower=0.5)), ""]))
    cache = SidonCache(path)
    assert len(cache.load()) == 1
    assert cache.corrupt_lines == 3
    assert "corrupt" in caplog.text


def test_extra_fields_preserved(tmp_path):
    cache = SidonCache(tmp_path / "s.jsonl")
    cache.upsert([rec(note="hand-checked", witness_hash="abc")])
    assert cache.records()[0]["note"] == "hand-checked"


def test_record_key_normalizes_exponents():
    assert record_key(rec(q="inf", p=2)) == record_key(rec(q="INF", p=2.0))


def test_unwritable_path_raises(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    cache = SidonCache(blocker / "sub" / "s.jsonl")
    with pytest.raises(CacheIOError):
        cache.upsert([rec()])


def test_default_path_env(monkeypatch, tmp_path):
    monkeypatch.setenv("BOHRRADIUS_CACHE", str(tmp_path / "x.jsonl"))
    assert default_cache_path() == tmp_path / "x.jsonl"
    monkeypatch.delenv("BOHRRADIUS_CACHE")
    assert default_cache_path().name == "sidon.jsonl"
    assert os.fspath(default_cache_path()).startswith(os.path.expanduser("~"))
