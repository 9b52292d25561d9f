import pytest
from hypothesis import given, settings

from core import dihedral, homology
from core.errors import ConsistencyError, DegreeOutOfRangeError, StructureError
from core.fgab import IntMatrix
from core.homology import ChainComplex, ChainMap
from core.involutive_algebra import natural_numbers
from strategies import complexes, self_maps


def doubling():
    z = homology.concentrated(1, 0, name="Z")
    return ChainMap(z, z, {0: IntMatrix.from_rows([[2]])}, name="2")


def circle_chains():
    return homology.normalized_chains(dihedral.circle_model())


def summary(c):
    return [(row["degree"], row["free_rank"], row["invariant_factors"])
            for row in homology.homology_table(c) if row["free_rank"] or row["invariant_factors"]]


def test_two_cell_complex():
    c = ChainComplex({0: ["v"], 1: ["e"]}, {1: IntMatrix.from_rows([[2]])}, name="Z -2-> Z")
    assert summary(c) == [(0, 0, [2])]


def test_nonzero_square_is_rejected():
    with pytest.raises(ConsistencyError):
        ChainComplex({0: ["a"], 1: ["b"], 2: ["c"]},
                     {1: IntMatrix.from_rows([[1]]), 2: IntMatrix.from_rows([[1]])})


def test_boundary_shape_is_checked():
    with pytest.raises(StructureError):
        ChainComplex({0: ["a"], 1: ["b"]}, {1: IntMatrix.from_rows([[1, 1]])})


def test_valid_range_is_enforced():
    c = ChainComplex({0: ["a"], 1: ["b"]}, valid_top=0)
    with pytest.raises(DegreeOutOfRangeError):
        homology.homology_at(c, 1)
    assert c.valid_degrees() == [0]


def test_cone_and_fiber_of_doubling():
    f = doubling()
    assert summary(homology.mapping_fiber(f)) == [(-1, 0, [2])]
    assert summary(homology.mapping_cone(f)) == [(0, 0, [2])]
    assert homology.is_acyclic(homology.mapping_fiber(homology.identity_map(f.source)))


def test_chain_maps_must_commute():
    c = ChainComplex({0: ["v"], 1: ["e"]}, {1: IntMatrix.from_rows([[2]])})
    with pytest.raises(ConsistencyError):
        ChainMap(c, c, {0: IntMatrix.from_rows([[1]]), 1: IntMatrix.from_rows([[3]])})


def test_circle_chains_and_torus():
    circle = circle_chains()
    assert summary(circle) == [(0, 1, []), (1, 1, [])]
    assert summary(homology.tensor_product(circle, circle)) == [(0, 1, []), (1, 2, []), (2, 1, [])]


def test_shift_and_direct_sum():
    circle = circle_chains()
    assert summary(homology.shift(circle, 2)) == [(2, 1, []), (3, 1, [])]
    assert summary(homology.direct_sum(circle, circle)) == [(0, 2, []), (1, 2, [])]


def test_induced_map_of_doubling():
    induced = homology.induced_map(doubling(), 0)
    assert induced.matrix == IntMatrix.from_rows([[2]])


@settings(max_examples=50)
@given(complexes)
def test_euler_characteristic_of_random_complexes(c):
    table = homology.homology_table(c)
    assert sum((-1) ** row["degree"] * row["free_rank"] for row in table) == c.euler_characteristic()


@settings(max_examples=20)
@given(self_maps)
def test_fiber_long_exact_sequence(f):
    assert homology.les_check(f).exact


def test_tensor_map_of_identities_is_the_identity():
    circle = circle_chains()
    identity = homology.identity_map(circle)
    tensored = homology.tensor_map(identity, identity)
    assert tensored.equals(homology.identity_map(tensored.source))


def test_normalized_chains_of_a_dihedral_piece():
    piece = dihedral.dihedral_nerve_piece(natural_numbers(), [(2,)], 3)
    chains = homology.normalized_chains(piece)
    assert chains.valid_top is None
    assert [chains.rank(q) for q in range(3)] == [1, 2, 1]
