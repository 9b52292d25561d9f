"""
The Mackey functor of components of real topological Hochschild homology
of a commutative ring with trivial involution:

    underlying level  A, trivial involution
    fixed level       (A ⊗ A) / T
    res(x ⊗ y) = x·y,  tran(a) = 2a ⊗ 1,  unit a -> 1 ⊗ a

where T is generated by x ⊗ a²y - a²x ⊗ y and x ⊗ 2ay - 2ax ⊗ y.
"""
import logging
from dataclasses import dataclass

from config import config
from core import fgab, mackey
from core.errors import ConsistencyError, InfeasibleComputationError, NontrivialInvolutionError
from core.fgab import GroupHom, IntMatrix
from core.involutive_algebra import frobenius, mod2

logger = logging.getLogger(__name__)

SQUARE_FAMILY = 1
DOUBLING_FAMILY = 2


@dataclass(frozen=True)
class TIdealGenerator:
    """One generator of T, named by its family and the generator indices x, y, a."""
    family: int
    x: int
    y: int
    a: int
    vector: tuple

    def is_zero_in(self, group):
        return group.is_zero(self.vector)


@dataclass
class Pi0ThrPresentation:
    ring: object
    tensor_square: fgab.FgAbGroup
    t_generators: list
    mackey: mackey.MackeyZ2
    alpha: GroupHom
    module: mackey.MackeyModule


def _require_trivial_involution(ring):
    if not ring.has_trivial_involution():
        raise NontrivialInvolutionError(f"{ring.name} carries a nontrivial involution")


def t_ideal_generators(ring):
    """Both families of generators of T over all triples of additive generators."""
    _require_trivial_involution(ring)
    n = ring.n_gens
    generators = []
    for x in range(n):
        gx = ring.generator(x)
        for y in range(n):
            gy = ring.generator(y)
            for a in range(n):
                ga = ring.generator(a)
                a_squared = ring.square(ga)
                two_a = ring.scale(2, ga)
                square = _difference(fgab.tensor_element(gx, ring.multiply(a_squared, gy)),
                                     fgab.tensor_element(ring.multiply(a_squared, gx), gy))
                doubling = _difference(fgab.tensor_element(gx, ring.multiply(two_a, gy)),
                                       fgab.tensor_element(ring.multiply(two_a, gx), gy))
                generators.append(TIdealGenerator(SQUARE_FAMILY, x, y, a, square))
                generators.append(TIdealGenerator(DOUBLING_FAMILY, x, y, a, doubling))
    return generators


def t_ideal_brute_force(ring):
    """
    T generated by both families over all triples of ring elements. Only for
    rings small enough to enumerate.
    """
    _require_trivial_involution(ring)
    if not within_exhaustive_limit(ring):
        raise InfeasibleComputationError(f"{ring.name} is too large to enumerate")
    elements = ring.elements()
    vectors = []
    for gx in elements:
        for gy in elements:
            for ga in elements:
                a_squared = ring.square(ga)
                two_a = ring.scale(2, ga)
                vectors.append(_difference(fgab.tensor_element(gx, ring.multiply(a_squared, gy)),
                                           fgab.tensor_element(ring.multiply(a_squared, gx), gy)))
                vectors.append(_difference(fgab.tensor_element(gx, ring.multiply(two_a, gy)),
                                           fgab.tensor_element(ring.multiply(two_a, gx), gy)))
    return vectors


def t_ideal_lattice(ring, vectors):
    """The subgroup spanned by vectors together with the relations of A ⊗ A, as a lattice."""
    square = fgab.tensor(ring.additive, ring.additive)
    return fgab.Lattice(square.n_gens, list(vectors) + square._relation_rows())


def _difference(u, v):
    return tuple(a - b for a, b in zip(u, v))


def _multiplication_matrix(ring):
    rows = [ring.table[i][j] for i in range(ring.n_gens) for j in range(ring.n_gens)]
    return IntMatrix.from_rows(rows, ring.n_gens) if rows else IntMatrix.zeros(0, 0)


def pi0_thr(ring):
    """
    :param ring: commutative ring with trivial involution
    :type ring: InvolutiveRing
    :returns: the presentation with its Mackey functor, unit map and ring action
    :rtype: Pi0ThrPresentation
    :raises NontrivialInvolutionError: when the involution is not the identity
    """
    _require_trivial_involution(ring)
    a = ring.additive
    n = ring.n_gens
    square = fgab.tensor(a, a)
    t_gens = t_ideal_generators(ring)
    g = fgab.quotient(square, [t.vector for t in t_gens])
    res = GroupHom(g, a, _multiplication_matrix(ring))
    tran = GroupHom(a, g, [fgab.tensor_element(ring.scale(2, ring.generator(k)), ring.one) for k in range(n)])
    alpha = GroupHom(a, g, [fgab.tensor_element(ring.one, ring.generator(k)) for k in range(n)])
    functor = mackey.MackeyZ2(a, fgab.identity_hom(a), g, res, tran, f"pi0 THR({ring.name})")
    act_e = [mackey.multiplication_hom(ring, ring.generator(k)) for k in range(n)]
    act_g = [GroupHom(g, g, IntMatrix.identity(n).kron(act.matrix)) for act in act_e]
    module = mackey.MackeyModule(functor, ring, act_e, act_g)
    vanishing = sum(1 for t in t_gens if t.is_zero_in(square))
    logger.info("pi0 THR(%s): G-level %s, %d of %d T-generators already zero in A(x)A",
                ring.name, g, vanishing, len(t_gens))
    return Pi0ThrPresentation(ring, square, t_gens, functor, alpha, module)


def frobenius_twisted_square(ring):
    """
    (A/2 ⊗ A/2) modulo φ(c)x ⊗ y - x ⊗ φ(c)y, with φ the Frobenius of A/2,
    on the generator pairs of A ⊗ A.
    """
    _require_trivial_involution(ring)
    reduced = mod2(ring)
    phi = frobenius(reduced)
    square = fgab.tensor(reduced.additive, reduced.additive)
    relations = []
    for c in range(reduced.n_gens):
        fc = phi.image_of_generator(c)
        for x in range(reduced.n_gens):
            gx = reduced.generator(x)
            for y in range(reduced.n_gens):
                gy = reduced.generator(y)
                relations.append(_difference(fgab.tensor_element(reduced.multiply(fc, gx), gy),
                                             fgab.tensor_element(gx, reduced.multiply(fc, gy))))
    return fgab.quotient(square, relations)


@dataclass
class SesReport:
    two_a: fgab.FgAbGroup
    g_level: fgab.FgAbGroup
    twisted_square: fgab.FgAbGroup
    certificate: fgab.ExactnessCertificate

    @property
    def exact(self):
        return self.certificate.exact


def ses_check(ring):
    """
    Verifies 0 -> 2A -> (A ⊗ A)/T -> (A/2 ⊗ A/2)/~ -> 0, with 2a -> 2a ⊗ 1 on
    the left and reduction mod 2 on the right.

    :raises ConsistencyError: when the sequence fails to be exact
    """
    presentation = pi0_thr(ring)
    g = presentation.mackey.g_level
    two_a = fgab.image(fgab.scalar_hom(ring.additive, 2))
    inclusion = GroupHom(two_a, g, [fgab.tensor_element(ring.scale(2, ring.generator(k)), ring.one)
                                    for k in range(ring.n_gens)])
    twisted = frobenius_twisted_square(ring)
    reduction = GroupHom(g, twisted, IntMatrix.identity(g.n_gens))
    zero = fgab.zero_group()
    sequence = [fgab.zero_hom(zero, two_a), inclusion, reduction, fgab.zero_hom(twisted, zero)]
    certificate = fgab.is_exact(sequence)
    if not certificate.exact:
        failure = certificate.first_failure()
        raise ConsistencyError(f"the short exact sequence for {ring.name} fails at joint {failure.index}")
    logger.info("short exact sequence verified for %s: 2A=%r G=%r twisted=%r", ring.name, two_a, g, twisted)
    return SesReport(two_a, g, twisted, certificate)


def is_alpha_iso(ring):
    """
    Whether the unit map A -> (A ⊗ A)/T is an isomorphism, checked against
    surjectivity of the Frobenius on A/2.

    :raises ConsistencyError: when the two criteria disagree
    """
    presentation = pi0_thr(ring)
    alpha_iso = fgab.is_iso(presentation.alpha)
    frobenius_onto = fgab.is_surjective(frobenius(mod2(ring)))
    if alpha_iso != frobenius_onto:
        raise ConsistencyError(
            f"unit map iso={alpha_iso} but Frobenius surjective={frobenius_onto} for {ring.name}")
    return alpha_iso


def pi0_thr_map(ring_hom):
    """The MackeyHom induced by a ring map: f on the underlying level and f ⊗ f on the fixed level."""
    source = pi0_thr(ring_hom.source).mackey
    target = pi0_thr(ring_hom.target).mackey
    f = ring_hom.additive
    f_g = GroupHom(source.g_level, target.g_level, f.matrix.kron(f.matrix))
    return mackey.MackeyHom(source, target, f, f_g)


@dataclass
class BaseChangeReport:
    iso: bool
    base_changed: mackey.MackeyZ2
    target: mackey.MackeyZ2
    comparison: mackey.MackeyHom
    inverse: object = None
    obstruction: str = ""


def verify_etale_base_change(ring_hom):
    """
    Compares pi0 THR(A) ⊗_A B with pi0 THR(B) along the canonical map
    a ⊗ b -> f(a)b and (x ⊗ y) ⊗ b -> f(x) ⊗ f(y)b. An isomorphism comes with
    an explicit inverse; otherwise the report names the differing level.
    """
    source_ring, target_ring = ring_hom.source, ring_hom.target
    source = pi0_thr(source_ring)
    changed = mackey.base_change(source.module, ring_hom)
    target = pi0_thr(target_ring).mackey
    f = ring_hom.additive
    n_a, n_b = source_ring.n_gens, target_ring.n_gens
    e_rows = [target_ring.multiply(f.image_of_generator(i), target_ring.generator(j))
              for i in range(n_a) for j in range(n_b)]
    g_rows = [fgab.tensor_element(f.image_of_generator(i),
                                  target_ring.multiply(f.image_of_generator(k), target_ring.generator(j)))
              for i in range(n_a) for k in range(n_a) for j in range(n_b)]
    f_e = GroupHom(changed.e_level, target.e_level, IntMatrix.from_rows(e_rows, n_b))
    f_g = GroupHom(changed.g_level, target.g_level, IntMatrix.from_rows(g_rows, n_b * n_b))
    comparison = mackey.MackeyHom(changed, target, f_e, f_g)
    inverse = mackey.find_inverse(comparison)
    report = BaseChangeReport(inverse is not None, changed, target, comparison, inverse)
    if inverse is None:
        differing = [level for level, (left, right) in
                     (("e", (changed.e_level, target.e_level)), ("g", (changed.g_level, target.g_level)))
                     if left != right]
        if differing:
            report.obstruction = "; ".join(
                f"{level}-level {_levels(changed, level)!r} vs {_levels(target, level)!r}" for level in differing)
        else:
            report.obstruction = "levels are abstractly isomorphic but the canonical map is not"
    logger.info("base change %s -> %s: iso=%s %s", source_ring.name, target_ring.name, report.iso, report.obstruction)
    return report


def _levels(functor, level):
    return functor.e_level if level == "e" else functor.g_level


def within_exhaustive_limit(ring):
    return ring.is_finite() and ring.additive.order() <= config.EXHAUSTIVE_LIMIT
