import json

from config import config
from core import fgab, report
from core.report import certificate


def test_group_notation():
    assert report.group_notation([], 0) == "0"
    assert report.group_notation([], 1) == "Z"
    assert report.group_notation([2, 2], 3) == "Z^3 + (Z/2)^2"
    assert report.group_notation([2, 4], 0) == "Z/2 + Z/4"
    assert report.describe_group(fgab.cyclic(6)) == "Z/6"


def test_group_record():
    record = report.group_record(fgab.direct_sum(fgab.free(1), fgab.cyclic(2)))
    assert record == {"invariant_factors": [2], "free_rank": 1, "notation": "Z + Z/2"}


def test_failed_certificates_are_found_at_any_depth():
    nested = {"certificates": [certificate("top", True)],
              "weights": [{"certificates": [certificate("inner", False)]}],
              "origin": {"certificates": [certificate("deep", False)]}}
    assert sorted(report.failed_certificates(nested)) == ["deep", "inner"]
    assert report.failed_certificates({"certificates": [certificate("ok", True)]}) == []


def test_homology_line():
    table = [{"degree": 0, "invariant_factors": [], "free_rank": 1},
             {"degree": 1, "invariant_factors": [2], "free_rank": 0},
             {"degree": 2, "invariant_factors": [], "free_rank": 0}]
    assert report.homology_line(table) == "H_0 = Z, H_1 = Z/2"
    assert report.homology_line(table[2:]) == "acyclic"


def test_json_carries_the_schema_version():
    document = json.loads(report.to_json({"passed": True}))
    assert document["schema_version"] == config.REPORT_SCHEMA_VERSION
    assert document["passed"] is True


def test_table_rendering():
    text = report.render_table({"ring": "Z", "certificates": [certificate("double coset law", True)],
                                "rows": [{"degree": 0, "rank": 1}, {"degree": 1, "rank": 1}]},
                               title="pi0thr")
    lines = text.splitlines()
    assert lines[0] == "== pi0thr =="
    assert "[PASS] double coset law" in text
    assert any(line.strip().startswith("degree") for line in lines)


def test_emit_to_a_file(tmp_path):
    path = tmp_path / "out.json"
    report.emit({"passed": False}, "json", str(path))
    assert json.loads(path.read_text(encoding="utf-8"))["passed"] is False
