import json

import pytest

from ppcount.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_count_inclexcl_gf9(capsys):
    code, out, _ = run(capsys, "count", "--field", "9", "--method", "inclexcl")
    assert code == 0
    d = json.loads(out)
    assert d["N"] == "42120" and d["q"] == 9 and d["method"] == "inclexcl"
    assert "elapsed_s" not in d


def test_count_with_timing(capsys):
    code, out, _ = run(capsys, "--timing", "count", "--field", "5")
    assert code == 0 and "elapsed_s" in json.loads(out)


def test_count_not_prime(capsys):
    code, _, err = run(capsys, "count", "--field", "8^1")
    assert code == 4 and "not prime" in err


def test_count_range(capsys):
    assert run(capsys, "count", "--field", "9", "--method", "interpolation")[0] == 3
    assert run(capsys, "count", "--field", "2", "--method", "criterion")[0] == 3
    assert run(capsys, "count", "--field", "5", "--method", "nope")[0] == 3


def test_count_formats(capsys):
    code, out, _ = run(capsys, "count", "--field", "7", "--format", "csv", "--workers", "1")
    assert code == 0
    assert out.splitlines() == ["q,N,method,field", "7,630,criterion,7^1"]
    code, out, _ = run(capsys, "count", "--field", "7", "--format", "markdown")
    assert "| 7 | 630 | 720 |" in out


def test_explicit_modulus(capsys):
    code, out, _ = run(capsys, "count", "--field", "2^3/1,0,1,1", "--method", "permanent")
    assert code == 0 and json.loads(out)["field"] == "2^3/1,0,1,1"


def test_table_small(capsys):
    code, out, _ = run(capsys, "table", "--qmax", "5", "--format", "json")
    assert code == 0
    rows = [json.loads(line) for line in out.splitlines()]
    assert [(r["q"], r["N"]) for r in rows] == [(2, "0"), (3, "0"), (4, "12"), (5, "20")]
    assert all(r["status"] == "match" for r in rows)


def test_table_markdown_orientation(capsys):
    code, out, _ = run(capsys, "table", "--qmax", "4")
    lines = out.splitlines()
    assert lines[0] == "| q | 2 | 3 | 4 |"
    assert lines[2] == "| N | 0 | 0 | 12 |"
    assert lines[3] == "| (q-1)! | 1 | 2 | 6 |"


def test_table_extended_rows(capsys):
    code, out, err = run(capsys, "table", "--qmax", "13", "--format", "json", "--workers", "1")
    rows = {r["q"]: r for r in map(json.loads, out.splitlines())}
    assert rows[13]["status"] == "extended" and rows[13]["method"] == "permanent"
    assert rows[13]["N"] == "479163828"
    # the published q = 8 entry disagrees with every method
    assert rows[8]["status"] == "MISMATCH" and code == 2
    assert "expected N=5368" in err


def test_table_qmax_range(capsys):
    assert run(capsys, "table", "--qmax", "21")[0] == 3


def test_cache_roundtrip(capsys, tmp_path):
    cache = tmp_path / "cache.jsonl"
    assert run(capsys, "--cache", str(cache), "table", "--qmax", "5")[0] == 0
    lines = cache.read_text().splitlines()
    assert len(lines) == 4 and json.loads(lines[2])["N"] == "12"
    first = run(capsys, "table", "--qmax", "5", "--cache", str(cache))
    again = run(capsys, "table", "--qmax", "5", "--cache", str(cache), "--recompute")
    assert first[1] == again[1] and again[0] == 0
    assert len(cache.read_text().splitlines()) == 4


def test_cache_mismatch_detected(capsys, tmp_path):
    cache = tmp_path / "cache.jsonl"
    cache.write_text(json.dumps({"q": 4, "N": "11", "method": "criterion", "field": "2^2/1,1,1"}) + "\n")
    code, _, err = run(capsys, "table", "--qmax", "4", "--cache", str(cache), "--recompute")
    assert code == 2 and "cached N=11" in err
    code, _, _ = run(capsys, "count", "--field", "4", "--cache", str(cache))
    assert code == 2


def test_cached_value_still_checked_against_table(capsys, tmp_path):
    cache = tmp_path / "cache.jsonl"
    cache.write_text(json.dumps({"q": 5, "N": "21", "method": "criterion", "field": "5^1"}) + "\n")
    assert run(capsys, "table", "--qmax", "5", "--cache", str(cache))[0] == 2


def test_verify_gf5(capsys):
    code, out, _ = run(capsys, "verify", "--field", "5")
    assert code == 0
    assert all(line.startswith("PASS") for line in out.splitlines())
    assert len(out.splitlines()) == 11


def test_verify_gf16_skips_inclexcl(capsys):
    code, out, _ = run(capsys, "verify", "--field", "2^4")
    assert code == 0
    assert ["SKIP", "inclusion-exclusion", "skipped", "(range)"] in [line.split() for line in out.splitlines()]
    assert sum(line.startswith("PASS") for line in out.splitlines()) == 10


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--field", "3", "--format", "json")
    assert code == 0
    assert {json.loads(line)["status"] for line in out.splitlines()} == {"PASS"}


def test_verify_q2(capsys):
    code, out, _ = run(capsys, "verify", "--field", "2")
    assert code == 0 and "skipped (needs q > 2)" in out


def test_verify_bad_field(capsys):
    assert run(capsys, "verify", "--field", "6")[0] == 4


def test_verify_seed_determinism(capsys):
    a = run(capsys, "verify", "--field", "7", "--seed", "42")
    b = run(capsys, "verify", "--field", "7", "--seed", "42")
    assert a == b and a[0] == 0


def test_bound_report(capsys):
    code, out, _ = run(capsys, "bound-report", "--qmax", "4")
    assert code == 0
    assert "| 4 | 12 | 6 | 6 |" in out
    assert "21.0478" in out


def test_bound_report_json(capsys):
    code, out, _ = run(capsys, "bound-report", "--qmax", "11", "--format", "json", "--workers", "1")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and len(rows) == 8
    assert all(r["theorem_holds"] for r in rows)


def test_bound_report_q3_constants(capsys):
    code, out, _ = run(capsys, "bound-report", "--qmax", "3", "--format", "json")
    rows = [json.loads(line) for line in out.splitlines()]
    assert all(r["empirical_constant"] < 1.3155 for r in rows)


def test_bound_report_range(capsys):
    assert run(capsys, "bound-report", "--qmax", "17")[0] == 3


def test_workers_env_overridden_by_flag(capsys, monkeypatch):
    monkeypatch.setenv("PPCOUNT_WORKERS", "3")
    a = run(capsys, "count", "--field", "7")
    b = run(capsys, "count", "--field", "7", "--workers", "1")
    assert a == b


@pytest.mark.parametrize("fmt", ["json", "csv", "markdown"])
def test_formats_byte_identical(capsys, fmt):
    a = run(capsys, "--format", fmt, "bound-report", "--qmax", "7")
    b = run(capsys, "bound-report", "--qmax", "7", "--format", fmt)
    assert a == b
