import json

import pytest

from partasym.cli import EXIT_OK, EXIT_REPRODUCE_FAILED, EXIT_USAGE, main, strip_meta
from partasym import exact_oracle


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_exact_grouped(capsys):
    code, out, _ = run(capsys, "exact", "--family", "nsp", "--r", "12", "--n", "1200", "--grouped")
    assert code == EXIT_OK
    assert out.strip() == "4 90015 90791 72981 67278 84124"


@pytest.mark.parametrize("family,n,value", [("concave", "6", "4"), ("basic", "0", "1"), ("basic", "2", "4")])
def test_exact_small(capsys, family, n, value):
    code, out, _ = run(capsys, "exact", "--family", family, "--n", n)
    assert (code, out.strip()) == (EXIT_OK, value)


def test_exact_range(capsys):
    code, out, _ = run(capsys, "exact", "--family", "nsp", "--r", "2", "--n", "8:10")
    assert code == EXIT_OK
    assert out.splitlines() == ["8\t7", "9\t8", "10\t12"]


def test_exact_json(capsys):
    code, out, _ = run(capsys, "exact", "--family", "concave", "--n", "6", "--format", "json")
    assert json.loads(out) == {"family": "concave", "params": {}, "n": 6, "exact": "4"}


def test_estimate_text(capsys):
    code, out, _ = run(capsys, "estimate", "--family", "nsp", "--r", "12", "--n", "1200")
    assert code == EXIT_OK
    assert "Phi_1" in out and "Phi_16" in out
    assert "rounded  49001590791729816727884124" in out
    assert "leading digits correct: 26" in out


def test_estimate_json_round_trip(capsys):
    argv = ["estimate", "--family", "colored3", "--n", "200", "--format", "json"]
    code, out, _ = run(capsys, *argv)
    assert code == EXIT_OK
    first = json.loads(out)
    assert first["exact"] == "174747949051237777122300"
    assert [p["k"] for p in first["phi"]] == list(range(1, 8))
    assert "elapsed_ms" in first["meta"]
    _, again, _ = run(capsys, *argv)
    a, b = strip_meta(first), strip_meta(json.loads(again))
    assert json.dumps(a, indent=2) == json.dumps(b, indent=2)
    assert json.loads(json.dumps(a)) == a


def test_compare_basic(capsys):
    code, out, _ = run(capsys, "compare", "--family", "basic", "--n", "1000", "--kmax", "13", "--format", "json")
    payload = json.loads(out)
    assert code == EXIT_OK
    assert abs(float(payload["error"]) + 0.0021) < 5e-4


def test_compare_colored3(capsys):
    code, out, _ = run(capsys, "compare", "--family", "colored3", "--n", "200", "--format", "json")
    assert code == EXIT_OK
    assert abs(float(json.loads(out)["error"])) < 5


def test_compare_small_nsp(capsys):
    code, out, _ = run(capsys, "compare", "--family", "nsp", "--r", "2", "--n", "10", "--format", "json")
    payload = json.loads(out)
    assert payload["exact"] == "12"
    assert abs(float(payload["error"])) < 1


def test_double_run_reports_agreement(capsys):
    code, out, _ = run(capsys, "estimate", "--family", "prings", "--n", "200", "--double-run", "--format", "json")
    payload = json.loads(out)
    assert payload["agreement_digits"] >= payload["digits"] - 10


@pytest.mark.parametrize("argv", [
    ["exact", "--family", "nsp", "--n", "10"],
    ["exact", "--family", "basic", "--n", "x"],
    ["exact", "--family", "unknown", "--n", "3"],
    ["estimate", "--family", "basic", "--n", "0", "--kmax", "1"],
    ["estimate", "--family", "basic", "--n", "5:9"],
    ["compare", "--family", "basic", "--n", str(exact_oracle.TABLE_BUDGET + 1)],
    ["reproduce", "--table", "sec9"],
    [],
])
def test_usage_errors(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == EXIT_USAGE


@pytest.mark.parametrize("table", ["dedekind", "identities", "sec3"])
def test_reproduce_clean_tables(capsys, table):
    code, out, _ = run(capsys, "reproduce", "--table", table)
    assert code == EXIT_OK
    assert out.splitlines()[-1].endswith(" 0 failed")


def test_reproduce_reports_misprints(capsys):
    code, out, _ = run(capsys, "reproduce", "--table", "sec4", "--format", "json")
    payload = json.loads(out)
    assert code == EXIT_REPRODUCE_FAILED
    assert [r["id"] for r in payload["rows"] if r["status"] == "FAIL"] == ["phi2"]


def test_cache_env(capsys, tmp_path, monkeypatch):
    monkeypatch.setattr(exact_oracle, "_cache", {})
    monkeypatch.setenv("PARTASYM_CACHE", str(tmp_path))
    code, out, _ = run(capsys, "exact", "--family", "nsp", "--r", "5", "--n", "40")
    assert code == EXIT_OK
    assert (tmp_path / "nsp_r5_40.txt").exists()
