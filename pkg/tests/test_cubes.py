import pytest
from hypothesis import given, settings

from core import acceptance, cubes, homology
from core.errors import NonCommutingCubeError, StructureError
from core.fgab import IntMatrix
from core.homology import ChainMap
from strategies import composable_pairs, cube_diagrams


def nonzero(table):
    return [(row["degree"], row["free_rank"], row["invariant_factors"])
            for row in table if row["free_rank"] or row["invariant_factors"]]


def scalar_square(top, right, left, bottom):
    z = homology.concentrated(1, 0, name="Z")

    def scalar(k):
        return ChainMap(z, z, {0: IntMatrix.from_rows([[k]])}, name=str(k))

    entries = {b: z for b in cubes.vertices(2)}
    edges = {((0, 0), 0): scalar(top), ((1, 0), 1): scalar(right),
             ((0, 0), 1): scalar(left), ((0, 1), 0): scalar(bottom)}
    return cubes.CubeDiagram(2, entries, edges, "scalars")


@settings(max_examples=50)
@given(cube_diagrams)
def test_total_fiber_recursion_on_random_cubes(cube):
    assert cubes.tfib_recursion_check(cube)["passed"]


def test_non_commuting_square_is_rejected():
    scalar_square(1, 2, 2, 1)
    with pytest.raises(NonCommutingCubeError):
        scalar_square(1, 1, 1, 2)


def test_missing_edge_is_rejected():
    z = homology.concentrated(1, 0)
    with pytest.raises(StructureError):
        cubes.CubeDiagram(1, {(0,): z, (1,): z}, {})


@pytest.mark.parametrize("dimension", [1, 2, 3])
def test_constant_cube_has_acyclic_total_fiber(dimension):
    cube = cubes.constant_cube(homology.concentrated(2, 0), dimension)
    assert homology.is_acyclic(cubes.total_fiber(cube))
    assert cubes.has_identity_edge(cube) == list(range(dimension))


def test_faces_and_restriction():
    cube = cubes.constant_cube(homology.concentrated(1, 0), 3)
    assert cube.face(0, 1).dimension == 2
    assert cube.restrict({1: 0, 2: 1}).dimension == 1


def test_tensor_of_fibers_matches_total_fiber():
    z = homology.concentrated(1, 0, name="Z")
    doubling = ChainMap(z, z, {0: IntMatrix.from_rows([[2]])}, name="2")
    tripling = ChainMap(z, z, {0: IntMatrix.from_rows([[3]])}, name="3")
    assert cubes.smash_cube_check([doubling, doubling])["passed"]
    assert cubes.smash_cube_check([doubling, tripling])["passed"]


def test_exterior_power_of_a_square_matrix():
    a = IntMatrix.from_rows([[2, 1], [1, 3]])
    assert cubes.exterior_power(a, 0) == IntMatrix.identity(1)
    assert cubes.exterior_power(a, 1) == a
    assert cubes.exterior_power(a, 2) == IntMatrix.from_rows([[5]])


def test_torus_map_rejects_mismatched_models():
    with pytest.raises(StructureError):
        cubes.torus_map(IntMatrix.identity(2), source=cubes.TorusModel(3))


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_anti_diagonal_cofiber(d):
    assert cubes.h_map_cofiber_check(d)["passed"]


def test_projective_line_lattice_cube():
    cube = cubes.cube_from_lattices(1)
    assert nonzero(homology.homology_table(cubes.punctured_limit(cube))) == [(0, 2, [])]


def test_weight_cube_at_the_origin_is_the_lattice_cube():
    cube = cubes.weight_cube(1, (0,))
    assert nonzero(homology.homology_table(cubes.punctured_limit(cube))) == [(0, 2, [])]


def test_positive_weight_cube_has_an_identity_edge():
    cube = cubes.weight_cube(1, (1,))
    assert 0 in cubes.has_identity_edge(cube)
    assert not nonzero(homology.homology_table(cubes.total_fiber(cube)))


def test_weight_cube_depends_on_the_weight():
    # I = {1}: v lies in M_{1} exactly when l_1(v) >= 0
    assert cubes.weight_cube(2, (1, 0)).entry((0, 1, 1)).degrees()
    assert not cubes.weight_cube(2, (-1, 0)).entry((0, 1, 1)).degrees()
    assert cubes.sign_pattern(2, (1, 0)) != cubes.sign_pattern(2, (-1, 0))


def test_weight_cube_rejects_wrong_length():
    with pytest.raises(StructureError):
        cubes.weight_cube(2, (1,))


@settings(max_examples=50)
@given(composable_pairs())
def test_torus_map_is_functorial(pair):
    a, b = pair
    composite = cubes.torus_map(a).then(cubes.torus_map(b))
    assert composite.equals(cubes.torus_map(a @ b))


def test_projective_line_report():
    report = cubes.p1_report(3)
    assert report["passed"]
    assert [w["weight"] for w in report["weights"]] == list(range(-3, 4))
    assert all(w["acyclic"] for w in report["weights"] if w["weight"])


def test_reflection_line_report():
    report = cubes.psigma_report()
    assert report["passed"]
    assert report["square"]["cartesian"]
    assert not report["printed_matrices"]["cartesian"]
    assert report["total_h0_rank"] == 2
    assert [s["h0_rank"] for s in report["summands"]] == [1, 1]


def test_projective_plane_report():
    report = cubes.pn_report(2, 2)
    assert report["passed"]
    assert report["origin"]["assembled_h0_rank"] == 3
    assert len(report["weights"]) == 5 ** 2 - 1


def test_projective_dimension_is_bounded():
    with pytest.raises(StructureError):
        cubes.pn_report(5)
    with pytest.raises(StructureError):
        cubes.pn_report(2, 0)


def test_projective_plane_chain_entries_carry_homology():
    report = cubes.pn_report(2, 2)
    chain = [w for w in report["weights"] if w["method"] == "chain"]
    assert report["chain_checked"] == len(chain) == 3 ** 2 - 1
    assert report["structural_checked"] == 5 ** 2 - 3 ** 2
    for w in chain:
        assert w["identity_edge"]
        assert w["total_fiber_homology"] is not None
        assert not nonzero(w["total_fiber_homology"])
    assert all(w["total_fiber_homology"] is None for w in report["weights"] if w["method"] == "structural")


@pytest.mark.parametrize("weight, direction, method", [
    ([1, 0, -2], 1, "structural"),
    ([1, 0, -1], 1, "chain"),
    ([-1, 0, 1], 3, "chain"),
    ([-1, -1, 0], 4, "chain"),
    ([0, -2, 0], 4, "structural"),
])
def test_projective_three_space_directions(weight, direction, method):
    entries = {tuple(w["weight"]): w for w in cubes.pn_report(3, 2)["weights"]}
    entry = entries[tuple(weight)]
    assert entry["direction"] == direction
    assert entry["method"] == method
    assert entry["acyclic"]


def test_projective_acceptance_counts_both_methods():
    passed, detail = acceptance.check_projective_spaces()
    assert passed
    # P^2 and P^3 in the window 3: 8 + 26 weights near the origin, 40 + 316 further out
    assert detail == "H_0 ranks [3, 4], 34 weights by chain, 356 structurally"


def test_weight_cube_spot_check_beyond_the_chain_radius():
    cube = cubes.weight_cube(3, (1, 0, -2))
    assert 0 in cubes.has_identity_edge(cube)
    assert not nonzero(homology.homology_table(cubes.total_fiber(cube)))
