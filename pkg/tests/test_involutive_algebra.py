import pytest
from hypothesis import given
from hypothesis import strategies as st

from core import fgab
from core.errors import InfiniteFiberError, MonoidError, NotARingHomError, RingAxiomError
from core.acceptance import spec_path
from core.fgab import IntMatrix
from core.involutive_algebra import (
    AffineMonoid,
    InvolutiveRing,
    RingHom,
    box_window,
    cone_monoid,
    elements_of_weight,
    frobenius,
    integers,
    integers_sigma,
    mod2,
    natural_numbers,
    product_monoid,
    projective_forms,
    sigma_orbits,
    unit_map,
)
from core.spec_loader import load_ring


def test_gaussian_integers_carry_conjugation(gaussian_integers):
    assert not gaussian_integers.has_trivial_involution()
    i = gaussian_integers.generator(1)
    assert gaussian_integers.square(i) == (-1, 0)
    assert gaussian_integers.involution(i) == (0, -1)


small = st.tuples(st.integers(-5, 5), st.integers(-5, 5))


@given(small, small)
def test_conjugation_is_multiplicative(x, y):
    ring = load_ring(spec_path("zi.json"))
    w = ring.involution
    assert w(ring.multiply(x, y)) == ring.multiply(w(x), w(y))


def test_bad_unit_is_rejected(f4):
    with pytest.raises(RingAxiomError) as excinfo:
        InvolutiveRing("bad", f4.additive, f4.generator_names, f4.table, (0, 1))
    assert excinfo.value.axiom == "unit"


def test_noncommutative_table_is_rejected():
    table = [[(1, 0), (0, 1)], [(1, 1), (0, 0)]]
    with pytest.raises(RingAxiomError) as excinfo:
        InvolutiveRing("bad", fgab.free(2), ["1", "x"], table, (1, 0))
    assert excinfo.value.axiom == "commutativity"


def test_exhaustive_verification(f4, integers_ring):
    assert f4.verify_exhaustively() == 4
    assert integers_ring.verify_exhaustively() is None


def test_frobenius(f4, dual_numbers):
    assert fgab.is_iso(frobenius(f4))
    assert not fgab.is_surjective(frobenius(dual_numbers))


def test_mod2_of_integers(integers_ring):
    assert mod2(integers_ring).additive == fgab.cyclic(2)


def test_ring_homs(integers_ring, f2, f4):
    assert unit_map(integers_ring, f4).matrix == IntMatrix.from_rows([[1, 0]])
    with pytest.raises(NotARingHomError):
        RingHom(f2, integers_ring, IntMatrix.from_rows([[1]]))
    with pytest.raises(NotARingHomError):
        RingHom(f2, f4, IntMatrix.from_rows([[0, 1]]))


def test_standard_monoids():
    assert natural_numbers().is_pointed()
    assert not integers().is_pointed()
    assert integers_sigma().act((3,)) == (-3,)
    assert natural_numbers().contains((4,))
    assert not natural_numbers().contains((-1,))
    assert integers().contains((-7,))


def test_membership_certificate(nat2_swap):
    element = nat2_swap.element((2, 3))
    assert element.certificate == (3, 2)
    with pytest.raises(MonoidError):
        nat2_swap.element((-1, 0))


def test_involution_must_preserve_the_monoid():
    with pytest.raises(MonoidError):
        AffineMonoid("N with negation", 1, [(1,)], involution=[[-1]])


def test_projective_cones():
    assert projective_forms(2) == [(1, 0), (0, 1), (-1, -1)]
    cone = cone_monoid(2, {1, 2})
    assert cone.is_pointed()
    assert cone.contains((1, 1))
    assert not cone.contains((-1, 0))
    assert cone_monoid(2, {3}).contains((-1, 0))


def test_weight_fibers():
    square = product_monoid(natural_numbers(), natural_numbers())
    total = IntMatrix.from_rows([[1], [1]])
    assert [e.vector for e in elements_of_weight(square, total, (2,))] == [(0, 2), (1, 1), (2, 0)]
    assert elements_of_weight(square, total, (-1,)) == []


def test_weight_fiber_with_a_weightless_generator_is_infinite():
    mixed = product_monoid(natural_numbers(), integers())
    with pytest.raises(InfiniteFiberError):
        elements_of_weight(mixed, IntMatrix.from_rows([[1], [0]]), (1,))


def test_sigma_orbits():
    orbits = sigma_orbits(integers_sigma(), box_window(1, 2))
    assert orbits == [((-2,), (2,)), ((-1,), (1,)), ((0,),)]


def test_positive_functionals(nat2_swap):
    assert natural_numbers().positive_functional == (1,)
    assert nat2_swap.positive_functional == (1, 1)
    assert integers().positive_functional is None
    assert not integers_sigma().is_pointed()
