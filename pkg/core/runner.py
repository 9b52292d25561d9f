import importlib
import logging
import os
from dataclasses import dataclass

from config import config
from core.errors import InputValidationError

logger = logging.getLogger(__name__)

REQUIRED_FUNCTIONS = ("run", "describe")


@dataclass(frozen=True)
class RunConfig:
    """
    Everything a controller needs for one run, built from the command-line
    options and validated on construction.
    """
    subcommand: str
    inputs: tuple = ()
    weight: tuple = ()
    window: int = None
    q_max: int = None
    space: str = None
    homology: bool = False
    fixed_pi0: bool = False
    validate: bool = False
    substitute: bool = False
    output_format: str = config.DEFAULT_OUTPUT_FORMAT
    output_path: str = None

    def __post_init__(self):
        if self.window is not None and self.window < 1:
            raise InputValidationError(f"window must be positive, got {self.window}")
        if self.q_max is not None and self.q_max < 1:
            raise InputValidationError(f"truncation degree must be positive, got {self.q_max}")
        if self.output_format not in config.OUTPUT_FORMATS:
            raise InputValidationError(
                f"output format must be one of {', '.join(config.OUTPUT_FORMATS)}, got {self.output_format!r}")
        if self.space is not None and self.space not in config.PROJECTIVE_CHOICES:
            raise InputValidationError(
                f"projective space must be one of {', '.join(config.PROJECTIVE_CHOICES)}, got {self.space!r}")
        for path in self.inputs:
            if not os.path.isfile(path):
                raise InputValidationError(f"input file {path} does not exist")


def controller_module_name(subcommand):
    return f"{config.CONTROLLER_PACKAGE}.{subcommand}{config.CONTROLLER_SUFFIX}"


def load_controller(subcommand):
    """Loads the controller module for a subcommand and checks it exposes run and describe."""
    module_name = controller_module_name(subcommand)
    try:
        module = importlib.import_module(module_name)
    except ModuleNotFoundError:
        raise FileNotFoundError(f"Could not find controller module: {module_name}. Ensure "
                                f"'{module_name.replace('.', '/')}.py' exists next to main.py.")
    for function in REQUIRED_FUNCTIONS:
        if not callable(getattr(module, function, None)):
            raise AttributeError(f"Controller module {module_name} must contain a function named '{function}'.")
    logger.debug("loaded controller %s", module_name)
    return module


def run(run_config):
    """Runs the controller of the configured subcommand and returns its report."""
    controller = load_controller(run_config.subcommand)
    logger.info("running %s: %s", run_config.subcommand, controller.describe())
    report = controller.run(run_config)
    report.setdefault("subcommand", run_config.subcommand)
    return report
