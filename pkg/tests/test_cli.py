import json

import pytest

from picard.cli import build_parser, main, parse_gaussian
from picard.gaussian import GaussianInteger as G


def run_json(capsys, *argv):
    code = main(list(argv) + ["--format", "json"])
    return code, json.loads(capsys.readouterr().out)


def sections(report):
    return {s["claim"]: s for s in report["sections"]}


def test_parse_gaussian():
    assert parse_gaussian("2+2i") == G(2, 2)
    assert parse_gaussian("2,2") == G(2, 2)
    assert parse_gaussian("-i") == G(0, -1)
    assert parse_gaussian("3") == G(3, 0)
    assert parse_gaussian("1-3i") == G(1, -3)


def test_usage_errors():
    with pytest.raises(SystemExit) as exc:
        build_parser().parse_args(["frobnicate"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        build_parser().parse_args(["candidates", "--translation", "2+x"])


def test_group_orders(capsys):
    code, rep = run_json(capsys, "group-orders")
    s = sections(rep)
    assert code == 0
    assert s["order-6/hlt"]["computed"] == 6
    assert s["gamma(1+i)-abelian"]["computed"] == {"torsion": [2, 2, 2, 2, 2], "rank": 0}
    assert s["order-192/felsch"]["computed"] == 192


def test_tables(capsys):
    code, rep = run_json(capsys, "tables")
    rows = [v for k, v in sections(rep).items() if k.startswith("table/")]
    assert len(rows) == 30 and all(r["status"] == "pass" for r in rows)
    assert all(r["computed"]["trace"] in ("2/3", "-2/3") for r in rows)


def test_volume_bound(capsys):
    code, rep = run_json(capsys, "volume-bound", "--copies", "16", "--vol3", "0.94", "--chi", "2")
    c = sections(rep)["volume-bound"]["computed"]
    assert code == 0 and c["contradiction"]
    assert abs(c["lhs"] - 28.9) < 0.05 and abs(c["rhs"] - 26.3) < 0.05
    code, _ = run_json(capsys, "volume-bound", "--copies", "1")
    assert code == 1


def test_candidates_and_search(capsys):
    code, rep = run_json(capsys, "candidates")
    assert code == 0
    code, rep = run_json(capsys, "search", "--manifold", "C+", "--form", "3", "--max-len", "1")
    assert code == 0 and sections(rep)["search/C+/A3"]["computed"]["found"]


def test_json_is_deterministic(capsys):
    main(["cross-check", "--format", "json"])
    first = capsys.readouterr().out
    main(["cross-check", "--format", "json"])
    assert capsys.readouterr().out == first


def test_text_and_output_file(tmp_path, capsys):
    out = tmp_path / "report.txt"
    assert main(["candidates", "--output", str(out)]) == 0
    text = out.read_text()
    assert "C_6,3" in text and capsys.readouterr().out == ""


def test_missing_dataset_exit_code(tmp_path, capsys):
    assert main(["tables", "--data-dir", str(tmp_path)]) == 2
    assert "input error" in capsys.readouterr().err


def test_verify_all_reports_known_failures(capsys):
    code, rep = run_json(capsys, "verify-all")
    failed = sorted(s["claim"] for s in rep["sections"] if s["status"] == "fail")
    assert code == 1
    assert failed == ["g1-noninvariant", "index-direct/D+", "index/D+"]
    assert sections(rep)["index/D+"]["computed"] == 24
