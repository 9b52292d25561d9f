# controllers/selftest_controller.py

from core import acceptance


def describe():
    return "runs the acceptance suite against the bundled spec files"


def run(run_config):
    return acceptance.run_all()
