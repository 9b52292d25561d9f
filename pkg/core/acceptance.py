"""
The acceptance suite behind `selftest`. Each check returns a certificate and
logs its wall time at INFO; random instances come from a seeded generator so the
suite is reproducible.
"""
import logging
import os
import random
import time

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from core import cubes, dihedral, fgab, homology, mackey, thr_pi0
from core.errors import ShadowError
from core.fgab import GroupHom, IntMatrix
from core.involutive_algebra import integers, natural_numbers, negative_naturals, trivial_monoid
from core.report import all_passed, certificate
from core.spec_loader import load_hom, load_ring

logger = logging.getLogger(__name__)

SPECS_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "specs")
SEED = 20240229

MACKEY_INSTANCES = 200
RANDOM_CUBES = 50
RANDOM_FIBERS = 20
SNF_MATRICES = 500


def spec_path(name):
    return os.path.join(SPECS_DIR, name)


# --- Random Instances ---

def random_matrix(rng, rows, cols, bound):
    return IntMatrix.from_rows([[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)], cols)


def random_involution(rng, n):
    """Signed involutive permutation matrix: e_i -> s_i e_pi(i) with s_i = s_pi(i)."""
    order = list(range(n))
    rng.shuffle(order)
    image = list(range(n))
    while len(order) >= 2 and rng.random() < 0.6:
        i, j = order.pop(), order.pop()
        image[i], image[j] = j, i
    signs = [0] * n
    for i in range(n):
        if not signs[i]:
            signs[i] = signs[image[i]] = rng.choice((1, -1))
    return IntMatrix.from_rows([[signs[i] * int(image[i] == j) for j in range(n)] for i in range(n)], n)


def random_group(rng, max_gens=3):
    n = rng.randint(1, max_gens)
    relations = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(rng.randint(0, n))]
    return fgab.group(n, relations or None)


def random_mackey(rng):
    """A Mackey functor from one of the standard constructions, occasionally summed with another."""
    kind = rng.randrange(4)
    if kind == 0:
        functor = mackey.constant_mackey(fgab.cyclic(rng.choice((0, 2, 3, 4, 6))))
    elif kind == 1:
        n = rng.randint(1, 3)
        m = fgab.free(n)
        functor = mackey.fixed_point_mackey(m, GroupHom(m, m, random_involution(rng, n)))
    elif kind == 2:
        functor = mackey.induced_mackey(random_group(rng))
    else:
        functor = mackey.burnside_mackey()
    if rng.random() < 0.25:
        functor = mackey.direct_sum(functor, mackey.constant_mackey(fgab.cyclic(rng.choice((0, 2)))))
    return functor


def random_complex(rng, max_rank=3, bound=3):
    """A complex in degrees 0..2; d_1 is drawn from the kernel of d_2 so that d_2 d_1 = 0."""
    r0, r1, r2 = (rng.randint(0, max_rank) for _ in range(3))
    d2 = random_matrix(rng, r2, r1, bound)
    kernel = fgab.left_nullspace(d2.transpose()).transpose() if r2 else IntMatrix.identity(r1)
    d1 = kernel @ random_matrix(rng, kernel.cols, r0, bound)
    return homology.ChainComplex({0: range(r0), 1: range(r1), 2: range(r2)}, {1: d1, 2: d2}, name="random")


def random_self_map(rng, c, bound=2):
    """k·id + dh + hd for a random scalar k and random homotopy h."""
    k = rng.randint(-3, 3)
    h = {q: random_matrix(rng, c.rank(q), c.rank(q + 1), bound) for q in range(-1, 3)}
    matrices = {}
    for q in c.degrees():
        matrix = IntMatrix.identity(c.rank(q)).scale(k)
        matrix = matrix + c.boundary(q) @ h[q - 1] if q - 1 in h and c.rank(q - 1) else matrix
        matrix = matrix + h[q] @ c.boundary(q + 1) if c.rank(q + 1) else matrix
        matrices[q] = matrix
    return homology.ChainMap(c, c, matrices, name=f"{k} + homotopy")


def random_cube(rng, dimension=None, rank=None):
    """
    An n-cube with the same concentrated complex at every vertex and, in
    direction i, a polynomial p_i(M) in one random matrix, so all squares commute.
    """
    dimension = dimension or rng.randint(1, 3)
    rank = rank or rng.randint(1, 3)
    base = random_matrix(rng, rank, rank, 2)
    powers = [IntMatrix.identity(rank), base, base @ base]
    c = homology.concentrated(rank, rng.randint(0, 1))
    degree = c.degrees()[0]
    directions = []
    for _ in range(dimension):
        matrix = IntMatrix.zeros(rank, rank)
        for power in powers:
            matrix = matrix + power.scale(rng.randint(-2, 2))
        directions.append(homology.ChainMap(c, c, {degree: matrix}))
    edges = {(b, i): directions[i] for b in cubes.vertices(dimension) for i in range(dimension) if not b[i]}
    return cubes.CubeDiagram(dimension, {b: c for b in cubes.vertices(dimension)}, edges, "random cube")


def sympy_invariant_factors(m):
    """Nonzero Smith invariants by sympy, in increasing order."""
    if m.is_zero():
        return []
    s = smith_normal_form(Matrix(m.rows_list()), domain=ZZ)
    return sorted(abs(int(s[i, i])) for i in range(min(s.shape)) if s[i, i] != 0)


# --- Checks ---

def check_pi0_integers():
    functor = thr_pi0.pi0_thr(load_ring(spec_path("z.json"))).mackey
    z = fgab.free(1)
    passed = (functor.e_level == z and functor.g_level == z
              and functor.res.matrix == IntMatrix.from_rows([[1]], 1)
              and functor.tran.matrix == IntMatrix.from_rows([[2]], 1))
    return passed, f"e={functor.e_level!r} g={functor.g_level!r}"


def check_dual_numbers():
    ring = load_ring(spec_path("f2t.json"))
    presentation = thr_pi0.pi0_thr(ring)
    g = presentation.mackey.g_level
    alpha_iso = thr_pi0.is_alpha_iso(ring)
    ses = thr_pi0.ses_check(ring)
    by_generators = thr_pi0.t_ideal_lattice(ring, [t.vector for t in presentation.t_generators])
    by_elements = thr_pi0.t_ideal_lattice(ring, thr_pi0.t_ideal_brute_force(ring))
    passed = (list(g.invariant_factors) == [2, 2, 2, 2] and g.free_rank == 0 and not alpha_iso
              and ses.exact and by_generators == by_elements)
    return passed, f"g={g!r} alpha iso={alpha_iso}"


def check_base_change():
    to_f4 = thr_pi0.verify_etale_base_change(load_hom(spec_path("f2_to_f4.json")))
    to_dual = thr_pi0.verify_etale_base_change(load_hom(spec_path("f2_to_f2t.json")))
    passed = (to_f4.iso and not to_dual.iso
              and list(to_dual.base_changed.g_level.invariant_factors) == [2, 2]
              and list(to_dual.target.g_level.invariant_factors) == [2, 2, 2, 2])
    return passed, to_dual.obstruction


def check_double_coset(rng):
    functors = [random_mackey(rng) for _ in range(MACKEY_INSTANCES)]
    for name in ("z.json", "f2.json", "f4.json", "f2t.json", "z4.json"):
        functors.append(thr_pi0.pi0_thr(load_ring(spec_path(name))).mackey)
    for name in ("f2_to_f4.json", "f2_to_f2t.json", "z_to_z.json"):
        result = thr_pi0.verify_etale_base_change(load_hom(spec_path(name)))
        functors.extend((result.base_changed, result.target))
    failures = sum(1 for f in functors if not f.satisfies_double_coset())
    return failures == 0, f"{len(functors)} functors, {failures} failures"


def check_nerve_pieces():
    details = []
    passed = True
    for j in range(1, 6):
        piece = dihedral.dihedral_nerve_piece(natural_numbers(), [(j,)], max(j + 1, 3))
        table = homology.homology_table(homology.normalized_chains(piece))
        ranks = [(row["free_rank"], tuple(row["invariant_factors"])) for row in table]
        expected = [(1, ()), (1, ())] + [(0, ())] * (len(ranks) - 2)
        components = dihedral.pi0(dihedral.fixed_subset(dihedral.sd_sigma(piece))).count
        passed = passed and ranks == expected and components == 2
        details.append(f"j={j}: pi0={components}")
    return passed, ", ".join(details)


def check_power_maps():
    failures = [(j, r) for j in range(4) for r in range(1, 4) if not dihedral.power_map_fixed_iso_check(j, r, 3).passed]
    return not failures, f"failing (j, r): {failures}" if failures else "12 pairs"


def check_projective_line():
    report = cubes.p1_report(5)
    return report["passed"], f"{len(report['weights'])} weights"


def check_reflection_line():
    report = cubes.psigma_report()
    return report["passed"], f"cartesian={report['square']['cartesian']}"


def check_projective_spaces():
    reports = [cubes.pn_report(n, 3) for n in (2, 3)]
    h_maps = [cubes.h_map_cofiber_check(d) for d in range(1, 5)]
    passed = all(r["passed"] for r in reports) and all(h["passed"] for h in h_maps)
    ranks = [r["origin"]["assembled_h0_rank"] for r in reports]
    chain = sum(r["chain_checked"] for r in reports)
    structural = sum(r["structural_checked"] for r in reports)
    return passed, f"H_0 ranks {ranks}, {chain} weights by chain, {structural} structurally"


def check_structure_suites(rng):
    objects = [dihedral.dihedral_nerve_piece(natural_numbers(), [(j,)], 4) for j in range(4)]
    objects.append(dihedral.sd_sigma(dihedral.circle_model()))
    objects.append(dihedral.sd_r(dihedral.dihedral_nerve_piece(natural_numbers(), [(4,)], 5), 2))
    structure = all(dihedral.validate_structure(x).passed for x in objects)

    fibers = 0
    for _ in range(RANDOM_FIBERS):
        if homology.les_check(random_self_map(rng, random_complex(rng))).exact:
            fibers += 1

    recursion = sum(1 for _ in range(RANDOM_CUBES) if cubes.tfib_recursion_check(random_cube(rng))["passed"])

    shuffles = [
        dihedral.shuffle_iso_check(natural_numbers(), natural_numbers(), [(1,)], [(1,)], 3),
        dihedral.shuffle_iso_check(natural_numbers(), negative_naturals(), [(2,)], [(-1,)], 3),
        dihedral.shuffle_iso_check(trivial_monoid(1), integers(), [(0,)], [(0,)], 2, window=2),
    ]
    shuffle = all(w.passed for w in shuffles)

    snf_agree = 0
    for _ in range(SNF_MATRICES):
        m = random_matrix(rng, rng.randint(1, 8), rng.randint(1, 8), 50)
        if sorted(abs(x) for x in fgab.snf_diagonal(m)) == sympy_invariant_factors(m):
            snf_agree += 1

    passed = (structure and fibers == RANDOM_FIBERS and recursion == RANDOM_CUBES and shuffle
              and snf_agree == SNF_MATRICES)
    detail = (f"structure={structure} fibers={fibers}/{RANDOM_FIBERS} cubes={recursion}/{RANDOM_CUBES} "
              f"shuffle={shuffle} snf={snf_agree}/{SNF_MATRICES}")
    return passed, detail


def _checks(rng):
    return [
        ("pi0 THR(Z) is the constant Mackey functor", check_pi0_integers),
        ("F2[t]/(t^2): G-level (Z/2)^4, unit map not iso, sequence exact", check_dual_numbers),
        ("base change F2 -> F4 iso, F2 -> F2[t]/(t^2) not iso", check_base_change),
        ("double coset law on generated Mackey functors", lambda: check_double_coset(rng)),
        ("N^di(N; j) has homology Z, Z and two fixed components", check_nerve_pieces),
        ("power maps onto cyclic fixed points", check_power_maps),
        ("projective line weights", check_projective_line),
        ("reflection line square is cartesian", check_reflection_line),
        ("projective planes and 3-space", check_projective_spaces),
        ("structural property suites", lambda: check_structure_suites(rng)),
    ]


def run_all():
    rng = random.Random(SEED)
    results = []
    for number, (name, check) in enumerate(_checks(rng), start=1):
        start = time.perf_counter()
        try:
            passed, detail = check()
        except ShadowError as e:
            passed, detail = False, f"{type(e).__name__}: {e}"
        elapsed = time.perf_counter() - start
        logger.info("acceptance %d (%s): %s in %.2fs", number, name, passed, elapsed)
        results.append(certificate(f"{number}. {name}", passed, detail))
    return {"checks": len(results), "seed": SEED, "certificates": results, "passed": all_passed(results)}
