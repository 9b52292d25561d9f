import pytest

from core import runner
from core.errors import InputValidationError
from core.runner import RunConfig

SUBCOMMANDS = ["pi0thr", "basechange", "nerve", "projective", "selftest"]


@pytest.mark.parametrize("subcommand", SUBCOMMANDS)
def test_every_subcommand_has_a_controller(subcommand):
    controller = runner.load_controller(subcommand)
    assert callable(controller.run)
    assert controller.describe()


def test_unknown_subcommand():
    with pytest.raises(FileNotFoundError, match="controllers/knot_controller.py"):
        runner.load_controller("knot")


@pytest.mark.parametrize("options", [
    {"window": 0},
    {"q_max": 0},
    {"output_format": "yaml"},
    {"space": "7"},
    {"inputs": ("no/such/spec.json",)},
])
def test_run_config_validation(options):
    with pytest.raises(InputValidationError):
        RunConfig("nerve", **options)


def test_run_records_the_subcommand(spec_path):
    report = runner.run(RunConfig("pi0thr", inputs=(spec_path("z.json"),)))
    assert report["subcommand"] == "pi0thr"
    assert report["passed"]
    assert report["g_level"]["notation"] == "Z"


def test_nerve_run_with_substitution(spec_path):
    report = runner.run(RunConfig("nerve", inputs=(spec_path("int.json"),), weight=(1,), q_max=4,
                                  fixed_pi0=True, substitute=True))
    assert [s["name"] for s in report["substitutions"]] == ["positive_cone_model"]
    assert report["fixed_pi0"]["count"] == 2
    assert report["fixed_pi0_unsubstituted"]["count"] == 2
    assert report["passed"]
