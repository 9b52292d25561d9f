import pytest
from hypothesis import given, settings

from core import fgab
from core.acceptance import sympy_invariant_factors
from core.errors import ColumnMismatchError, IllDefinedHomError, InfeasibleComputationError
from core.fgab import GroupHom, IntMatrix
from strategies import groups, int_matrices


@settings(max_examples=500)
@given(int_matrices(max_rows=8, max_cols=8))
def test_snf_invariants_agree_with_sympy(m):
    assert sorted(abs(d) for d in fgab.snf_diagonal(m)) == sympy_invariant_factors(m)


@given(int_matrices())
def test_snf_transforms_reproduce_the_diagonal(m):
    s, u, v = fgab.snf(m)
    assert u @ m @ v == s
    diagonal = [s[i, i] for i in range(min(s.rows, s.cols))]
    assert all(d >= 0 for d in diagonal)
    nonzero = [d for d in diagonal if d]
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
    assert all(s[i, j] == 0 for i in range(s.rows) for j in range(s.cols) if i != j)


@given(int_matrices(max_rows=5, max_cols=5, bound=9))
def test_left_nullspace_is_killed(m):
    null = fgab.left_nullspace(m)
    assert (null @ m).is_zero()


@given(groups())
def test_canonical_form_survives_presentation_change(g):
    doubled = fgab.direct_sum(g, fgab.zero_group())
    assert doubled == g
    assert fgab.identity_hom(g).equals(fgab.invert(fgab.identity_hom(g)))


def test_cyclic_groups():
    assert fgab.cyclic(4).order() == 4
    assert fgab.cyclic(0).free_rank == 1
    assert fgab.cyclic(1).is_trivial()
    assert fgab.group(2, [[2, 0], [0, 3]]) == fgab.cyclic(6)


def test_coordinates_reduce_torsion():
    g = fgab.cyclic(4)
    assert g.equal((5,), (1,))
    assert g.is_zero((8,))
    assert not g.is_zero((2,))


def test_kernel_and_cokernel_of_doubling_on_z4():
    z4 = fgab.cyclic(4)
    doubling = fgab.scalar_hom(z4, 2)
    k, inclusion = fgab.kernel(doubling)
    c, _ = fgab.cokernel(doubling)
    assert k == fgab.cyclic(2)
    assert c == fgab.cyclic(2)
    assert inclusion.then(doubling).is_zero()


def test_short_exact_sequence_of_doubling():
    z, z2, zero = fgab.free(1), fgab.cyclic(2), fgab.zero_group()
    sequence = [fgab.zero_hom(zero, z), fgab.scalar_hom(z, 2), GroupHom(z, z2, [[1]]), fgab.zero_hom(z2, zero)]
    assert fgab.is_exact(sequence).exact


def test_inexact_sequence_names_its_joint():
    z = fgab.free(1)
    zero = fgab.zero_group()
    sequence = [fgab.zero_hom(zero, z), fgab.scalar_hom(z, 2), fgab.zero_hom(z, zero)]
    certificate = fgab.is_exact(sequence)
    assert not certificate.exact
    assert certificate.first_failure().index == 1


def test_tensor_of_cyclic_groups():
    assert fgab.tensor(fgab.cyclic(4), fgab.cyclic(6)) == fgab.cyclic(2)
    assert fgab.tensor(fgab.free(2), fgab.cyclic(3)) == fgab.direct_sum(fgab.cyclic(3), fgab.cyclic(3))


def test_ill_defined_hom_is_rejected():
    with pytest.raises(IllDefinedHomError):
        GroupHom(fgab.cyclic(2), fgab.free(1), [[1]])


def test_shape_mismatch_is_rejected():
    with pytest.raises(ColumnMismatchError):
        IntMatrix.from_rows([[1, 2], [3]])
    with pytest.raises(ColumnMismatchError):
        IntMatrix.identity(2) @ IntMatrix.identity(3)


def test_infinite_group_cannot_be_enumerated():
    with pytest.raises(InfeasibleComputationError):
        fgab.free(1).elements()


def test_elements_of_finite_group():
    elements = fgab.direct_sum(fgab.cyclic(2), fgab.cyclic(3)).elements()
    assert len(elements) == 6


def test_lattice_membership():
    lattice = fgab.Lattice(2, [(2, 0), (1, 3)])
    assert (3, 3) in lattice
    assert (1, 0) not in lattice
    assert lattice.rank == 2


def test_factor_through_an_inclusion():
    z = fgab.free(1)
    inclusion = fgab.scalar_hom(z, 2)
    assert fgab.factor_through(fgab.scalar_hom(z, 6), inclusion).matrix == IntMatrix.from_rows([[3]])
    with pytest.raises(IllDefinedHomError):
        fgab.factor_through(fgab.identity_hom(z), inclusion)
