import pytest

from core import dihedral, homology
from core.dihedral import Structure
from core.errors import (
    EquivarianceError,
    InfiniteFiberError,
    StructureError,
    TruncationDepthError,
    WindowNotStabilizedError,
)
from core.involutive_algebra import integers, integers_sigma, natural_numbers, negative_naturals, trivial_monoid


def nonzero_homology(x):
    table = homology.homology_table(homology.normalized_chains(x))
    return [(row["degree"], row["free_rank"]) for row in table if row["free_rank"] or row["invariant_factors"]]


def test_weight_one_piece_of_the_naturals():
    piece = dihedral.dihedral_nerve_piece(natural_numbers(), [(1,)], 3)
    assert piece.simplices(0) == (((1,),),)
    assert piece.simplices(1) == (((0,), (1,)), ((1,), (0,)))
    assert piece.nondegenerate(1) == [((0,), (1,))]
    assert piece.structure == Structure.DIHEDRAL


@pytest.mark.parametrize("j", [1, 2, 3, 4, 5])
def test_positive_weight_pieces_are_circles_with_two_fixed_components(j):
    piece = dihedral.dihedral_nerve_piece(natural_numbers(), [(j,)], max(j + 1, 3))
    assert nonzero_homology(piece) == [(0, 1), (1, 1)]
    assert dihedral.pi0(dihedral.fixed_subset(dihedral.sd_sigma(piece))).count == 2
    assert dihedral.euler_characteristic(piece) == 0


def test_weight_zero_piece_is_a_point():
    piece = dihedral.dihedral_nerve_piece(natural_numbers(), [(0,)], 3)
    assert nonzero_homology(piece) == [(0, 1)]


def test_non_pointed_monoid_needs_a_window():
    with pytest.raises(InfiniteFiberError):
        dihedral.dihedral_nerve_piece(integers(), [(1,)], 2)
    with pytest.raises(InfiniteFiberError):
        dihedral.real_nerve(natural_numbers(), 3)


def test_weight_set_must_be_closed_under_the_involution():
    with pytest.raises(EquivarianceError):
        dihedral.dihedral_nerve_piece(integers_sigma(), [(1,)], 2)


def test_windowed_piece_is_real_only():
    piece = dihedral.dihedral_nerve_piece(integers(), [(1,)], 2, window=2)
    assert piece.structure == Structure.REAL
    assert dihedral.validate_structure(piece).passed


def test_truncation_is_enforced():
    piece = dihedral.dihedral_nerve_piece(natural_numbers(), [(1,)], 2)
    with pytest.raises(TruncationDepthError):
        piece.simplices(3)
    with pytest.raises(TruncationDepthError):
        dihedral.sd_sigma(dihedral.circle_model(0))


def test_reflection_circle():
    circle = dihedral.circle_model()
    assert circle.structure == Structure.REAL
    assert nonzero_homology(circle) == [(0, 1), (1, 1)]
    assert dihedral.circle_fixed_points().count == 2


def test_point():
    assert nonzero_homology(dihedral.point()) == [(0, 1)]


@pytest.mark.parametrize("x", [
    dihedral.dihedral_nerve_piece(natural_numbers(), [(2,)], 4),
    dihedral.dihedral_nerve_piece(negative_naturals(), [(-1,)], 3),
    dihedral.sd_sigma(dihedral.circle_model()),
    dihedral.sd_r(dihedral.dihedral_nerve_piece(natural_numbers(), [(4,)], 5), 2),
    dihedral.real_nerve(integers_sigma(), 3, window=2),
])
def test_structure_identities_hold(x):
    report = dihedral.validate_structure(x)
    assert report.passed, report.violation
    assert report.checked > 0


def test_broken_rotation_is_reported():
    piece = dihedral.dihedral_nerve_piece(natural_numbers(), [(2,)], 3)
    broken = piece.with_maps(rotation_fn=lambda q, x: x[1:] + x[:1])
    report = dihedral.validate_structure(broken)
    assert not report.passed
    assert report.violation.degree >= 1
    assert dihedral.rotation_order_check(piece) is None


def test_subdivision_needs_the_matching_structure():
    with pytest.raises(StructureError):
        dihedral.sd_r(dihedral.circle_model(), 2)
    with pytest.raises(StructureError):
        dihedral.fixed_subset(dihedral.circle_model())


@pytest.mark.parametrize("j", [0, 1, 2, 3])
@pytest.mark.parametrize("r", [1, 2, 3])
def test_power_maps_onto_cyclic_fixed_points(j, r):
    assert dihedral.power_map_fixed_iso_check(j, r, 3).passed


def test_shuffle_isomorphisms():
    assert dihedral.shuffle_iso_check(natural_numbers(), natural_numbers(), [(1,)], [(1,)], 3).passed
    assert dihedral.shuffle_iso_check(natural_numbers(), negative_naturals(), [(2,)], [(-1,)], 3).passed
    assert dihedral.shuffle_iso_check(trivial_monoid(1), integers(), [(0,)], [(0,)], 2, window=2).passed


def test_sigma_orbit_split():
    assert dihedral.sigma_orbit_split_check(1, 2, 2).passed


@pytest.mark.parametrize("j", [-2, 0, 1, 3])
def test_integer_piece_has_two_fixed_components(j):
    result = dihedral.pi0_windowed(dihedral.dihedral_integer_family(j), 4)
    assert result.count == 2
    assert result.bounds == (4, 5, 6)


def test_real_integer_circle_has_two_fixed_components():
    assert dihedral.pi0_windowed(dihedral.real_integer_circle_family(), 3).count == 2


def test_drifting_components_are_not_certified():
    def vertices(bound):
        return list(range(bound))

    def late_edges(bound):
        return [(0, k) for k in range(bound)] if bound > 2 else []

    isolated = dihedral.VertexEdgeFamily("isolated", vertices, lambda bound: [])
    joined = dihedral.VertexEdgeFamily("joined", vertices, late_edges)
    assert dihedral.pi0_windowed(isolated, 2).count == 2
    with pytest.raises(WindowNotStabilizedError):
        dihedral.pi0_windowed(joined, 2)


def test_simplicial_map_validation():
    piece = dihedral.dihedral_nerve_piece(natural_numbers(), [(1,)], 2)
    identity = dihedral.SimplicialMap(piece, piece, lambda q, x: x, name="id")
    assert identity.validate()
    constant = dihedral.SimplicialMap(piece, piece, lambda q, x: ((5,),) * (q + 1), name="bad")
    with pytest.raises(StructureError):
        constant.validate()
