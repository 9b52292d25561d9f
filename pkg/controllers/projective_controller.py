# controllers/projective_controller.py

import logging

from core import cubes

logger = logging.getLogger(__name__)


def describe():
    return "cube-diagram assembly for the projective line, the reflection line and projective n-space"


def run(run_config):
    """
    Args:
        run_config (RunConfig): space is "1", "sigma" or a dimension 2..4;
            window bounds the weights checked.

    Returns:
        dict: the report of the matching cube assembly.
    """
    space = run_config.space or "1"
    if space == "1":
        return cubes.p1_report(run_config.window)
    if space == "sigma":
        return cubes.psigma_report()
    logger.info("assembling P^%s with weight window %s", space, run_config.window)
    return cubes.pn_report(int(space), run_config.window)
