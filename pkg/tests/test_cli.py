from __future__ import annotations

import csv
import io
import json
import math

import pytest

from bohrradius.cli import EXIT_CACHE, EXIT_CONFIG, EXIT_OK, format_number, Down, Up, main, parse_int_range


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_beta_example():
    code, out, _ = run("beta", "--n", "1", "--lambda", "1", "--tol", "1e-10")
    assert code == EXIT_OK
    (row,) = rows(out)
    assert float(row["beta_lo"]) <= 1 / 3 <= float(row["beta_hi"])
    assert list(row) == ["n", "lambda", "beta_lo", "beta_hi", "iterations"]


def test_sidon_example():
    code, out, _ = run("sidon", "--m", "1", "--n", "5")
    assert code == EXIT_OK
    assert out.splitlines()[1].split(",")[:6] == ["1", "5", "1", "1", "exact-m1", "-"]


def test_table_example():
    code, out, _ = run("table", "--n", "2..20", "--q", "inf", "--lambda", "1.5")
    assert code == EXIT_OK
    table = rows(out)
    assert len(table) == 19
    assert {r["gamma_hi"] for r in table} == {table[0]["gamma_hi"]}
    assert float(table[0]["gamma_hi"]) == pytest.approx(1.5 / 3.5, abs=1e-11)
    assert all(r["q"] == "inf" for r in table)
    assert all(float(r["beta_lo"]) <= float(r["beta_hi"]) for r in table)


def test_gamma_rows(tmp_path):
    code, out, err = run("gamma", "--n", "2", "--m-max", "2", "--budget", "400",
                         "--cache", str(tmp_path / "c.jsonl"))
    assert code == EXIT_OK, err
    (row,) = rows(out)
    assert float(row["beta_hi"]) <= float(row["gamma_hi"])
    assert row["tail_m_max"] == "2" and "search" in row["table_provenance"]


def test_verify_rows():
    code, out, _ = run("verify", "--check", "bohr", "--grid", "9", "--r", "0.3333333333333333", "0.4")
    assert code == EXIT_OK
    data = rows(out)
    assert len(data) == 18
    assert {r["verdict"] for r in data if float(r["r"]) < 0.34} == {"holds"}
    assert "violated" in {r["verdict"] for r in data if float(r["r"]) > 0.34}
    code, out, _ = run("verify", "--check", "corner", "--n", "2,3", "--m", "2", "--samples", "100")
    assert code == EXIT_OK and len(rows(out)) == 2


def test_byte_determinism(tmp_path):
    for argv in (("sidon", "--m", "2", "--n", "2,3", "--budget", "400", "--seed", "3"),
                 ("table", "--n", "2..6", "--lambda", "1", "1.5", "--format", "json")):
        assert run(*argv)[1] == run(*argv)[1]


def test_csv_json_round_trip():
    _, out_csv, _ = run("beta", "--n", "2..4", "--lambda", "1", "1.5")
    _, out_json, _ = run("beta", "--n", "2..4", "--lambda", "1", "1.5", "--format", "json")
    parsed = json.loads(out_json)
    assert len(parsed) == len(rows(out_csv)) == 6
    for a, b in zip(rows(out_csv), parsed):
        for key in ("beta_lo", "beta_hi"):
            assert float(a[key]) == b[key]


def test_printed_intervals_still_enclose():
    from bohrradius.radii import SeriesSpec, solve_root

    _, out, _ = run("beta", "--n", "2..8")
    for row in rows(out):
        b = solve_root(SeriesSpec(int(row["n"])), 1e-12)
        assert float(row["beta_lo"]) <= b.lo and b.hi <= float(row["beta_hi"])


def test_format_number():
    assert format_number(Down(1 / 3)) == "0.333333333333"
    assert format_number(Up(1 / 3)) == "0.333333333334"
    assert format_number(math.inf) == "inf"
    assert format_number(None) == ""
    assert format_number(7) == 7


def test_parse_int_range():
    assert parse_int_range("2..4") == [2, 3, 4]
    assert parse_int_range("1,5") == [1, 5]
    with pytest.raises(ValueError):
        parse_int_range("5..2")


@pytest.mark.parametrize("argv", [
    ("beta", "--n", "0"),
    ("beta", "--lambda", "0.5"),
    ("beta", "--tol", "0"),
    ("sidon", "--budget", "-1"),
    ("beta", "--q", "0.2"),
    ("nonsense",),
    ("beta", "--n", "x"),
])
def test_config_errors(argv, capsys):
    code, _, err = run(*argv)
    assert code == EXIT_CONFIG


def test_cache_failure_exit_code(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    code, _, err = run("sidon", "--m", "2", "--n", "2", "--budget", "200", "--cache", str(blocker / "x" / "c.jsonl"))
    assert code == EXIT_CACHE and "cache" in err


def test_corrupt_cache_warns(tmp_path):
    path = tmp_path / "c.jsonl"
    path.write_text("garbage\n")
    code, _, err = run("sidon", "--m", "2", "--n", "2", "--budget", "200", "--cache", str(path))
    assert code == EXIT_OK and "1 corrupt line" in err


def test_env_cache(monkeypatch, tmp_path):
    path = tmp_path / "env.jsonl"
    monkeypatch.setenv("BOHRRADIUS_CACHE", str(path))
    code, _, _ = run("sidon", "--m", "2", "--n", "2", "--budget", "200")
    assert code == EXIT_OK and path.exists()
