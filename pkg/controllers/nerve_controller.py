# controllers/nerve_controller.py

import logging

from config import config
from core import dihedral, homology
from core.errors import ColumnMismatchError, InfeasibleComputationError, TruncationDepthError
from core.fgab import IntMatrix
from core.involutive_algebra import natural_numbers
from core.report import all_passed, certificate, homology_line
from core.spec_loader import load_monoid

logger = logging.getLogger(__name__)


def describe():
    return "weight pieces of the dihedral nerve: counts, homology, fixed-point components and structure checks"


def _is_integer_line(monoid):
    return monoid.rank == 1 and set(monoid.generators) == {(1,), (-1,)}


def _substitute(monoid, weight, q_max):
    """Finite model for a weight piece of the dihedral nerve of Z or Z^sigma."""
    if not _is_integer_line(monoid):
        raise InfeasibleComputationError(
            f"{monoid.name} is not pointed and only Z and Z^sigma have finite models for their nerve pieces")
    j = weight[0]
    if j == 0:
        model = dihedral.circle_model(q_max)
        return model, {"name": "reflection_circle_model", "weight": 0, "replaces": f"N^di({monoid.name}; 0)",
                       "model": model.name}
    if monoid.involution != IntMatrix.identity(1):
        raise InfeasibleComputationError(
            f"weight {j} of {monoid.name} is a free orbit; no finite model is available for it")
    model = dihedral.dihedral_nerve_piece(natural_numbers(), [(abs(j),)], q_max)
    name = "positive_cone_model" if j > 0 else "negative_cone_model"
    return model, {"name": name, "weight": j, "replaces": f"N^di({monoid.name}; {j})", "model": model.name}


def _piece(monoid, weight, q_max, substitute):
    orbit = sorted({tuple(weight), tuple(monoid.act(weight))})
    if substitute and not monoid.is_pointed():
        model, used = _substitute(monoid, weight, q_max)
        logger.info("substituting %s for %s", used["model"], used["replaces"])
        return model, [used]
    # raises InfiniteFiberError for monoids that are not pointed
    return dihedral.dihedral_nerve_piece(monoid, orbit, q_max), []


def _fixed_pi0(x):
    if x.involution is None:
        raise InfeasibleComputationError(f"{x.name} carries no involution")
    if x.q_max < 3:
        raise TruncationDepthError(f"fixed-point components need truncation degree at least 3, got {x.q_max}")
    components = dihedral.pi0(dihedral.fixed_subset(dihedral.sd_sigma(x)))
    return {"count": components.count, "representatives": [list(map(list, r)) for r in components.representatives]}


def run(run_config):
    """
    Args:
        run_config (RunConfig): inputs[0] is a monoid spec file; weight,
            q_max and the homology / fixed_pi0 / validate / substitute flags.

    Returns:
        dict: nondegenerate counts and whichever of homology, fixed-point
        components and structure validation were requested.
    """
    monoid = load_monoid(run_config.inputs[0])
    weight = tuple(run_config.weight) or (0,) * monoid.rank
    if len(weight) != monoid.rank:
        raise ColumnMismatchError(f"weight {list(weight)} has {len(weight)} coordinates, {monoid.name} has rank {monoid.rank}")
    q_max = run_config.q_max or config.DEFAULT_Q_MAX
    x, substitutions = _piece(monoid, weight, q_max, run_config.substitute)

    counts = x.nondegenerate_counts()
    report = {
        "monoid": monoid.name,
        "weight": list(weight),
        "object": x.name,
        "structure": x.structure.value,
        "q_max": q_max,
        "simplex_counts": [x.count(q) for q in range(q_max + 1)],
        "nondegenerate_counts": counts,
        "euler_characteristic": dihedral.euler_characteristic(x),
        "substitutions": substitutions,
    }
    certificates = []
    if run_config.homology:
        chains = homology.normalized_chains(x)
        table = homology.homology_table(chains)
        report["homology"] = table
        report["homology_summary"] = homology_line(table)
        if chains.valid_top is None:
            alternating = sum((-1) ** row["degree"] * row["free_rank"] for row in table)
            certificates.append(certificate("Euler characteristic of homology matches the simplex count",
                                            alternating == report["euler_characteristic"]))
    if run_config.fixed_pi0:
        report["fixed_pi0"] = _fixed_pi0(x)
        if substitutions and _is_integer_line(monoid) and monoid.involution == IntMatrix.identity(1):
            bound = run_config.window or config.DEFAULT_PI0_BOUND
            windowed = dihedral.pi0_windowed(dihedral.dihedral_integer_family(weight[0]), bound)
            report["fixed_pi0_unsubstituted"] = {"count": windowed.count, "bounds": list(windowed.bounds)}
            certificates.append(certificate("substituted model has the fixed components of the original",
                                            windowed.count == report["fixed_pi0"]["count"]))
    if run_config.validate:
        structure = dihedral.validate_structure(x)
        violation = structure.violation
        report["validation"] = {"checked": structure.checked, "passed": structure.passed,
                                "violation": None if violation is None else
                                f"{violation.identity} in degree {violation.degree} at {violation.simplex}"}
        certificates.append(certificate(f"{structure.structure} identities", structure.passed))
    report["certificates"] = certificates
    report["passed"] = all_passed(certificates)
    logger.info("%s: nondegenerate counts %s", x.name, counts)
    return report
