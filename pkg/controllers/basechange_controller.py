# controllers/basechange_controller.py

import logging

from core import mackey, thr_pi0
from core.report import all_passed, certificate, group_record, matrix_record
from core.spec_loader import load_hom

logger = logging.getLogger(__name__)


def describe():
    return "compares pi0 THR(A) tensored up along A -> B with pi0 THR(B)"


def _levels(functor):
    return {"e_level": group_record(functor.e_level), "g_level": group_record(functor.g_level)}


def run(run_config):
    """
    Args:
        run_config (RunConfig): inputs[0] is a ring-map spec file naming its
            source and target ring specs.

    Returns:
        dict: the verdict, with an inverse witness when the comparison is an
        isomorphism and the differing level otherwise.
    """
    ring_hom = load_hom(run_config.inputs[0])
    induced = thr_pi0.pi0_thr_map(ring_hom)
    result = thr_pi0.verify_etale_base_change(ring_hom)
    certificates = [certificate("pi0 THR(f) commutes with res, tran and w", True, "checked on construction")]
    if result.iso:
        round_trip = (result.comparison.then(result.inverse).equals(mackey.identity_mackey_hom(result.base_changed))
                      and result.inverse.then(result.comparison).equals(mackey.identity_mackey_hom(result.target)))
        certificates.append(certificate("inverse witness composes to the identity", round_trip))
    else:
        certificates.append(certificate("non-isomorphism comes with an obstruction", bool(result.obstruction),
                                        result.obstruction))
    logger.info("base change %s -> %s: iso=%s", ring_hom.source.name, ring_hom.target.name, result.iso)
    report = {
        "source": ring_hom.source.name,
        "target": ring_hom.target.name,
        "ring_map": matrix_record(ring_hom.matrix),
        "iso": result.iso,
        "base_changed": _levels(result.base_changed),
        "target_functor": _levels(result.target),
        "induced_map": {"e_level": matrix_record(induced.f_e.matrix), "g_level": matrix_record(induced.f_g.matrix)},
        "obstruction": result.obstruction,
        "certificates": certificates,
        "passed": all_passed(certificates),
    }
    if result.inverse is not None:
        report["inverse"] = {"e_level": matrix_record(result.inverse.f_e.matrix),
                             "g_level": matrix_record(result.inverse.f_g.matrix)}
    return report
