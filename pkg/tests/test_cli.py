import csv
import json

import pytest

from selfsep.cli import main


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr().out
    return code, out


def test_m_subcommand(capsys):
    code, out = run(["m", "sym:5@ksubsets:2"], capsys)
    assert code == 0
    assert "m(sym:5@ksubsets:2) = 4" in out
    assert "1 2 3 4" in out  # 1-based witness points


def test_bounds_subcommand(capsys):
    code, out = run(["bounds", "cyclic:7@regular"], capsys)
    assert code == 0
    assert "lower      3" in out
    assert "upper      4" in out
    assert "stabilizer-average" in out


def test_separable_subcommand(capsys):
    code, out = run(["separable", "sym:3@natural", "--set", "0,1"], capsys)
    assert code == 0
    assert "not_separable" in out
    code, out = run(["separable", "cyclic:4@regular", "--set", "0,1"], capsys)
    assert code == 0
    assert "is separable" in out
    assert "separating element" in out


def test_info_subcommand(capsys):
    code, out = run(["info", "sym:2 wr sym:3 @imprimitive"], capsys)
    assert code == 0
    assert "order      48" in out
    assert "primitive  False" in out


def test_filter_subcommand(capsys):
    code, out = run(["filter", "cyclic:8@regular"], capsys)
    assert code == 0
    assert "sum 32" in out and "70" in out and "FAIL" in out


def test_diffbasis_subcommand(capsys):
    code, out = run(["diffbasis", "cyclic:13", "--method", "min"], capsys)
    assert code == 0
    assert "size 4" in out and "planar: True" in out
    code, out = run(["diffbasis", "unused", "--method", "singer", "--q", "3"],
                    capsys)
    assert code == 0
    assert "size 4" in out


def test_qformula_subcommand(capsys):
    code, out = run(["qformula", "gauss", "4", "2", "2", "--compare-oracle"],
                    capsys)
    assert code == 0
    assert "35" in out and "match" in out
    code, out = run(["qformula", "ts", "sp", "2", "1", "2",
                     "--compare-oracle"], capsys)
    assert code == 0
    assert "MISMATCH" in out  # the anchored discrepancy is reported


def test_witness_subcommand(capsys):
    code, out = run(["witness", "cyclic:7@regular", "--size", "3",
                     "--seed", "1", "--budget-secs", "10"], capsys)
    assert code == 0
    assert "non-separable 3-set" in out


def test_usage_error_prints_grammar(capsys):
    code = main(["m", "nonsense:13"])
    err = capsys.readouterr().err
    assert code == 1
    assert "grammar" in err


def test_capacity_exit_code(capsys):
    code = main(["m", "sym:5@ksubsets:2", "--max-sets", "1"])
    assert code == 2


def test_json_report(tmp_path, capsys):
    path = tmp_path / "report.json"
    code, _ = run(["m", "sym:4", "--json", str(path)], capsys)
    assert code == 0
    data = json.loads(path.read_text())
    assert data["schema"] == "selfsep/1"
    assert data["indexing"] == "0-based"
    assert data["payload"]["m"] == 3
    assert data["payload"]["minimal_witness"] == [0, 1, 2]


def test_json_deterministic_payload(tmp_path, capsys):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    run(["witness", "cyclic:7@regular", "--size", "3", "--seed", "5",
         "--json", str(p1)], capsys)
    run(["witness", "cyclic:7@regular", "--size", "3", "--seed", "5",
         "--json", str(p2)], capsys)
    d1 = json.loads(p1.read_text())["payload"]
    d2 = json.loads(p2.read_text())["payload"]
    assert d1 == d2


def test_csv_report(tmp_path, capsys):
    path = tmp_path / "rows.csv"
    code, _ = run(["reproduce", "lower-equality", "--csv", str(path)], capsys)
    assert code == 0
    with open(path) as fh:
        rows = list(csv.DictReader(fh))
    assert all(r["status"] == "pass" for r in rows)
    assert all(r["provenance"] for r in rows)


def test_reproduce_suites_quick(capsys):
    for suite in ("lower-equality", "filters-small", "nested",
                  "complementB-small", "pairs-packing"):
        code, out = run(["reproduce", suite], capsys)
        assert code == 0, suite
        assert "suite result: PASS" in out


def test_reproduce_unknown_suite(capsys):
    with pytest.raises(SystemExit):
        main(["reproduce", "made-up"])


def test_env_budget(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("SELFSEP_MAX_DEGREE", "4")
    code = main(["m", "sym:5@ksubsets:2"])
    assert code == 2
    monkeypatch.delenv("SELFSEP_MAX_DEGREE")
