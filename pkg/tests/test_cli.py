import json

import pytest
from click.testing import CliRunner

from core import runner as core_runner
from core.report import certificate
from main import cli


@pytest.fixture
def cli_runner():
    return CliRunner()


def invoke(cli_runner, *args):
    return cli_runner.invoke(cli, [str(a) for a in args])


def test_pi0thr_json(cli_runner, spec_path):
    result = invoke(cli_runner, "pi0thr", spec_path("z.json"), "--format", "json")
    assert result.exit_code == 0, result.output
    document = json.loads(result.stdout)
    assert document["subcommand"] == "pi0thr"
    assert document["g_level"]["notation"] == "Z"
    assert document["tran"] == [[2]]


def test_json_output_is_deterministic(cli_runner, spec_path):
    first = invoke(cli_runner, "pi0thr", spec_path("f2t.json"), "--format", "json")
    second = invoke(cli_runner, "pi0thr", spec_path("f2t.json"), "--format", "json")
    assert first.exit_code == 0
    assert first.stdout == second.stdout


def test_table_output(cli_runner, spec_path):
    result = invoke(cli_runner, "basechange", spec_path("f2_to_f4.json"))
    assert result.exit_code == 0
    assert "== Real THH Shadows: basechange ==" in result.stdout
    assert "[PASS]" in result.stdout


@pytest.mark.parametrize("args", [
    ("pi0thr", "bad_table.json"),
    ("basechange", "f2_to_z.json"),
    ("pi0thr", "zi.json"),
    ("nerve", "nat.json", "--weight", "1,0"),
    ("nerve", "nat.json", "--weight", "one"),
    ("pi0thr", "absent.json"),
])
def test_invalid_input_exits_with_2(cli_runner, spec_path, args):
    command, name, *rest = args
    result = invoke(cli_runner, command, spec_path(name), *rest)
    assert result.exit_code == 2
    assert "error" in result.output


@pytest.mark.parametrize("args", [
    ("int.json", "--weight", "1"),
    ("int_sigma.json", "--weight", "1", "--substitute"),
    ("nat.json", "--fixed-pi0", "--q-max", "2"),
])
def test_infeasible_requests_exit_with_3(cli_runner, spec_path, args):
    name, *rest = args
    result = invoke(cli_runner, "nerve", spec_path(name), *rest)
    assert result.exit_code == 3


def test_substituted_integer_piece(cli_runner, spec_path):
    result = invoke(cli_runner, "nerve", spec_path("int.json"), "--weight", "1", "--substitute", "--format", "json")
    assert result.exit_code == 0
    assert json.loads(result.stdout)["substitutions"][0]["name"] == "positive_cone_model"


def test_full_nerve_run(cli_runner, spec_path):
    result = invoke(cli_runner, "nerve", spec_path("nat.json"), "--weight", "1", "--homology", "--fixed-pi0",
                    "--validate", "--format", "json")
    assert result.exit_code == 0
    document = json.loads(result.stdout)
    assert document["homology_summary"] == "H_0 = Z, H_1 = Z"
    assert document["fixed_pi0"]["count"] == 2
    assert document["validation"]["passed"]


@pytest.mark.parametrize("args", [("1", "--window", "2"), ("sigma",), ("2", "--window", "1")])
def test_projective(cli_runner, args):
    result = invoke(cli_runner, "projective", *args)
    assert result.exit_code == 0


def test_output_file(cli_runner, spec_path, tmp_path):
    path = tmp_path / "report.json"
    result = invoke(cli_runner, "pi0thr", spec_path("f4.json"), "--format", "json", "--output", path)
    assert result.exit_code == 0
    assert result.stdout == ""
    assert json.loads(path.read_text(encoding="utf-8"))["unit_map_iso"] is True


def test_failing_certificate_exits_with_4(cli_runner, spec_path, monkeypatch):
    monkeypatch.setattr(core_runner, "run", lambda run_config: {
        "certificates": [certificate("broken on purpose", False)], "passed": False})
    result = invoke(cli_runner, "pi0thr", spec_path("z.json"))
    assert result.exit_code == 4
    assert "broken on purpose" in result.output


def test_selftest(cli_runner):
    result = invoke(cli_runner, "selftest", "--format", "json")
    assert result.exit_code == 0, result.output
    assert json.loads(result.stdout)["passed"]
