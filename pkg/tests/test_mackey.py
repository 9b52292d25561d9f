import pytest
from hypothesis import given, settings

from core import fgab, mackey
from core.errors import DoubleCosetError, EquivarianceError
from core.fgab import GroupHom, IntMatrix
from core.involutive_algebra import identity_ring_hom
from strategies import groups, mackey_functors


@settings(max_examples=200)
@given(mackey_functors)
def test_double_coset_law_on_generated_functors(functor):
    assert functor.satisfies_double_coset()
    assert mackey.identity_mackey_hom(functor).is_iso()


@given(groups())
def test_induced_functor_restricts_to_the_diagonal(g):
    functor = mackey.induced_mackey(g)
    assert functor.e_level == fgab.direct_sum(g, g)
    assert functor.g_level == g


def test_wrong_transfer_breaks_the_double_coset_law():
    z = fgab.free(1)
    identity = fgab.identity_hom(z)
    with pytest.raises(DoubleCosetError):
        mackey.MackeyZ2(z, identity, z, identity, identity)


def test_involution_must_square_to_the_identity():
    z = fgab.free(1)
    with pytest.raises(EquivarianceError):
        mackey.MackeyZ2(z, fgab.scalar_hom(z, 2), z, fgab.identity_hom(z), fgab.scalar_hom(z, 2))


def test_fixed_points_of_the_swap():
    z2 = fgab.free(2)
    swap = GroupHom(z2, z2, [[0, 1], [1, 0]])
    functor = mackey.fixed_point_mackey(z2, swap)
    assert functor.g_level == fgab.free(1)
    assert functor.satisfies_double_coset()


def test_burnside_functor():
    functor = mackey.burnside_mackey()
    assert functor.g_level == fgab.free(2)
    assert functor.satisfies_double_coset()


def test_cokernel_of_doubling_on_the_constant_functor():
    z = fgab.free(1)
    constant = mackey.constant_mackey(z)
    doubling = mackey.MackeyHom(constant, constant, fgab.scalar_hom(z, 2), fgab.scalar_hom(z, 2))
    quotient, projection = mackey.cokernel(doubling)
    assert quotient.e_level == fgab.cyclic(2)
    assert quotient.g_level == fgab.cyclic(2)
    assert mackey.is_exact([doubling, projection])["exact"]
    assert not doubling.is_iso()
    assert mackey.find_inverse(doubling) is None


def test_kernel_of_a_zero_map_is_everything():
    constant = mackey.constant_mackey(fgab.cyclic(3))
    zero = mackey.MackeyHom(constant, constant, fgab.zero_hom(constant.e_level, constant.e_level),
                            fgab.zero_hom(constant.g_level, constant.g_level))
    k, _ = mackey.kernel(zero)
    assert k.e_level == fgab.cyclic(3)


def test_morphisms_must_commute_with_transfer():
    z = fgab.free(1)
    constant = mackey.constant_mackey(z)
    with pytest.raises(EquivarianceError):
        mackey.MackeyHom(constant, constant, fgab.identity_hom(z), fgab.scalar_hom(z, 3))


def test_inverse_of_an_automorphism():
    z = fgab.free(1)
    constant = mackey.constant_mackey(z)
    negation = mackey.MackeyHom(constant, constant, fgab.scalar_hom(z, -1), fgab.scalar_hom(z, -1))
    inverse = mackey.find_inverse(negation)
    assert negation.then(inverse).equals(mackey.identity_mackey_hom(constant))


def test_constant_module_base_change_along_identity(integers_ring):
    module = mackey.constant_module(integers_ring)
    changed = mackey.base_change(module, identity_ring_hom(integers_ring))
    assert changed.e_level == fgab.free(1)
    assert changed.g_level == fgab.free(1)
    assert changed.tran.matrix == IntMatrix.from_rows([[2]])


def test_extending_an_underlying_map_into_fixed_points():
    z, z2 = fgab.free(1), fgab.free(2)
    constant = mackey.make_mackey(z, fgab.identity_hom(z), z, fgab.identity_hom(z), fgab.scalar_hom(z, 2))
    swap = mackey.fixed_point_mackey(z2, GroupHom(z2, z2, [[0, 1], [1, 0]]))
    diagonal = GroupHom(z, z2, [[1, 1]])
    extended = mackey.extend_underlying_hom(constant, swap, diagonal)
    assert extended.f_g.then(swap.res).equals(constant.res.then(diagonal))
    with pytest.raises(EquivarianceError):
        mackey.extend_underlying_hom(constant, swap, GroupHom(z, z2, [[1, 0]]))
    with pytest.raises(EquivarianceError):
        mackey.extend_underlying_hom(constant, constant, fgab.identity_hom(z))
