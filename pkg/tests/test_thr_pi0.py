import pytest
from hypothesis import given, settings

from core import fgab, mackey, thr_pi0
from core.errors import InfeasibleComputationError, NontrivialInvolutionError
from core.fgab import IntMatrix
from strategies import cyclic_rings


def test_integers_give_the_constant_functor(integers_ring):
    functor = thr_pi0.pi0_thr(integers_ring).mackey
    assert functor.e_level == fgab.free(1)
    assert functor.g_level == fgab.free(1)
    assert functor.res.matrix == IntMatrix.from_rows([[1]])
    assert functor.tran.matrix == IntMatrix.from_rows([[2]])
    assert thr_pi0.is_alpha_iso(integers_ring)


def test_dual_numbers(dual_numbers):
    presentation = thr_pi0.pi0_thr(dual_numbers)
    g = presentation.mackey.g_level
    assert list(g.invariant_factors) == [2, 2, 2, 2]
    assert g.free_rank == 0
    assert not thr_pi0.is_alpha_iso(dual_numbers)
    assert thr_pi0.ses_check(dual_numbers).exact


def test_t_ideal_generators_match_brute_force(dual_numbers, f4):
    for ring in (dual_numbers, f4):
        generators = [t.vector for t in thr_pi0.pi0_thr(ring).t_generators]
        assert thr_pi0.t_ideal_lattice(ring, generators) == \
            thr_pi0.t_ideal_lattice(ring, thr_pi0.t_ideal_brute_force(ring))


def test_f4_is_its_own_fixed_level(f4):
    functor = thr_pi0.pi0_thr(f4).mackey
    assert functor.g_level == f4.additive
    assert thr_pi0.is_alpha_iso(f4)


def test_z4_t_ideal_vanishes(z4):
    presentation = thr_pi0.pi0_thr(z4)
    assert all(t.is_zero_in(presentation.tensor_square) for t in presentation.t_generators)
    assert presentation.mackey.g_level == fgab.cyclic(4)
    report = thr_pi0.ses_check(z4)
    assert report.two_a == fgab.cyclic(2)
    assert report.twisted_square == fgab.cyclic(2)


def test_nontrivial_involution_is_rejected(gaussian_integers):
    with pytest.raises(NontrivialInvolutionError):
        thr_pi0.pi0_thr(gaussian_integers)


def test_brute_force_needs_a_small_ring(integers_ring):
    with pytest.raises(InfeasibleComputationError):
        thr_pi0.t_ideal_brute_force(integers_ring)


@settings(max_examples=25)
@given(cyclic_rings())
def test_cyclic_rings(ring):
    presentation = thr_pi0.pi0_thr(ring)
    assert presentation.mackey.satisfies_double_coset()
    assert presentation.mackey.g_level == ring.additive
    assert thr_pi0.is_alpha_iso(ring)
    assert thr_pi0.ses_check(ring).exact


def test_separable_base_change_is_an_isomorphism(f2_to_f4):
    report = thr_pi0.verify_etale_base_change(f2_to_f4)
    assert report.iso
    assert report.comparison.then(report.inverse).equals(mackey.identity_mackey_hom(report.base_changed))
    assert report.obstruction == ""


def test_dual_numbers_base_change_is_not(f2_to_dual_numbers):
    report = thr_pi0.verify_etale_base_change(f2_to_dual_numbers)
    assert not report.iso
    assert list(report.base_changed.g_level.invariant_factors) == [2, 2]
    assert list(report.target.g_level.invariant_factors) == [2, 2, 2, 2]
    assert "g-level" in report.obstruction


def test_induced_map_of_a_ring_map(f2_to_f4):
    induced = thr_pi0.pi0_thr_map(f2_to_f4)
    assert induced.f_e.matrix == IntMatrix.from_rows([[1, 0]])
    assert induced.f_g.matrix == IntMatrix.from_rows([[1, 0, 0, 0]])
