"""
Mackey functors for the group of order two, stored as two presented levels
with restriction, transfer and the underlying involution.
"""
import logging

from core import fgab
from core.errors import (
    ConsistencyError,
    DoubleCosetError,
    EquivarianceError,
    IllDefinedHomError,
    ModuleAxiomError,
    NonComposableError,
)
from core.fgab import GroupHom, IntMatrix

logger = logging.getLogger(__name__)


class MackeyZ2:
    """
    A two-level Mackey functor.

    :param e_level: underlying level
    :type e_level: FgAbGroup
    :param w: involution of the underlying level
    :type w: GroupHom
    :param g_level: fixed level
    :type g_level: FgAbGroup
    :param res: restriction, g_level -> e_level
    :type res: GroupHom
    :param tran: transfer, e_level -> g_level
    :type tran: GroupHom
    """
    def __init__(self, e_level, w, g_level, res, tran, name=""):
        self.e_level = e_level
        self.w = w
        self.g_level = g_level
        self.res = res
        self.tran = tran
        self.name = name
        self.fixed_point_of = None
        self._verify()

    def _verify(self):
        e, g = self.e_level, self.g_level
        for label, hom, source, target in (("w", self.w, e, e), ("res", self.res, g, e), ("tran", self.tran, e, g)):
            if not (hom.source.same_presentation(source) and hom.target.same_presentation(target)):
                raise NonComposableError(f"{label} does not run between the expected levels of {self.name or 'the Mackey functor'}")
        identity = fgab.identity_hom(e)
        if not self.w.then(self.w).equals(identity):
            raise EquivarianceError(f"w does not square to the identity on {self.name or 'the underlying level'}")
        broken = _first_difference(self.tran.then(self.res), identity + self.w)
        if broken is not None:
            raise DoubleCosetError(f"res(tran(x)) != x + w(x) at underlying generator {broken}")
        broken = _first_difference(self.res.then(self.w), self.res)
        if broken is not None:
            raise EquivarianceError(f"w(res(x)) != res(x) at fixed generator {broken}")
        broken = _first_difference(self.w.then(self.tran), self.tran)
        if broken is not None:
            raise EquivarianceError(f"tran(w(x)) != tran(x) at underlying generator {broken}")

    def satisfies_double_coset(self):
        """Re-checks res∘tran = id + w on generators."""
        return self.tran.then(self.res).equals(fgab.identity_hom(self.e_level) + self.w)

    def levels(self):
        return self.e_level, self.g_level

    def __repr__(self):
        return f"MackeyZ2({self.name!r}, e={self.e_level!r}, g={self.g_level!r})"


def _first_difference(f, g):
    for i in range(f.source.n_gens):
        if not f.target.equal(f.matrix.row(i), g.matrix.row(i)):
            return i
    return None


def make_mackey(e_level, w, g_level, res, tran, name=""):
    return MackeyZ2(e_level, w, g_level, res, tran, name)


# --- Standard Constructions ---

def constant_mackey(a, name=""):
    """Both levels a, res the identity, tran multiplication by 2, trivial involution."""
    identity = fgab.identity_hom(a)
    return MackeyZ2(a, identity, a, identity, fgab.scalar_hom(a, 2), name or "constant")


def fixed_point_mackey(m, w, name=""):
    """Levels (m, m^w); res is the inclusion of the fixed subgroup and tran is x -> x + w(x)."""
    fixed, inclusion = fgab.kernel(w - fgab.identity_hom(m))
    norm = fgab.identity_hom(m) + w
    tran = fgab.factor_through(norm, inclusion)
    mackey = MackeyZ2(m, w, fixed, inclusion, tran, name or "fixed points")
    mackey.fixed_point_of = (m, w)
    return mackey


def induced_mackey(m, name=""):
    """Levels (m + m with the swap, m); res is the diagonal and tran the sum."""
    n = m.n_gens
    doubled = fgab.direct_sum(m, m)
    identity = IntMatrix.identity(n)
    zero = IntMatrix.zeros(n, n)
    swap = IntMatrix.vstack(IntMatrix.hstack(zero, identity), IntMatrix.hstack(identity, zero), cols=2 * n)
    res = IntMatrix.hstack(identity, identity, rows=n)
    tran = IntMatrix.vstack(identity, identity, cols=n)
    return MackeyZ2(doubled, GroupHom(doubled, doubled, swap), m, GroupHom(m, doubled, res),
                    GroupHom(doubled, m, tran), name or "induced")


def burnside_mackey():
    """Underlying Z, fixed level Z{[C2/C2], [C2/e]}."""
    e = fgab.free(1)
    g = fgab.free(2)
    return MackeyZ2(e, fgab.identity_hom(e), g, GroupHom(g, e, [[1], [2]]), GroupHom(e, g, [[0, 1]]), "burnside")


def direct_sum(first, second):
    return MackeyZ2(fgab.direct_sum(first.e_level, second.e_level),
                    fgab.direct_sum_hom(first.w, second.w),
                    fgab.direct_sum(first.g_level, second.g_level),
                    fgab.direct_sum_hom(first.res, second.res),
                    fgab.direct_sum_hom(first.tran, second.tran),
                    f"{first.name} + {second.name}")


# --- Morphisms ---

class MackeyHom:
    """
    A morphism of Mackey functors, checked against res, tran and w.

    :param source: the source functor
    :type source: MackeyZ2
    :param target: the target functor
    :type target: MackeyZ2
    :param f_e: map of underlying levels
    :type f_e: GroupHom
    :param f_g: map of fixed levels
    :type f_g: GroupHom
    """
    def __init__(self, source, target, f_e, f_g):
        self.source = source
        self.target = target
        self.f_e = f_e
        self.f_g = f_g
        for name, left, right in (
            ("res", f_g.then(target.res), source.res.then(f_e)),
            ("tran", f_e.then(target.tran), source.tran.then(f_g)),
            ("w", f_e.then(target.w), source.w.then(f_e)),
        ):
            broken = _first_difference(left, right)
            if broken is not None:
                raise EquivarianceError(f"morphism does not commute with {name} at generator {broken}")

    def then(self, other):
        return MackeyHom(self.source, other.target, self.f_e.then(other.f_e), self.f_g.then(other.f_g))

    def is_iso(self):
        return fgab.is_iso(self.f_e) and fgab.is_iso(self.f_g)

    def inverse(self):
        """The inverse morphism; both composites are checked to be identities."""
        inverse = MackeyHom(self.target, self.source, fgab.invert(self.f_e), fgab.invert(self.f_g))
        if not (self.then(inverse).equals(identity_mackey_hom(self.source))
                and inverse.then(self).equals(identity_mackey_hom(self.target))):
            raise ConsistencyError("inverse Mackey morphism does not compose to the identity")
        return inverse

    def equals(self, other):
        return self.f_e.equals(other.f_e) and self.f_g.equals(other.f_g)


def identity_mackey_hom(m):
    return MackeyHom(m, m, fgab.identity_hom(m.e_level), fgab.identity_hom(m.g_level))


def zero_mackey():
    z = fgab.zero_group()
    zero = fgab.zero_hom(z, z)
    return MackeyZ2(z, zero, z, zero, zero, "zero")


def find_inverse(f):
    """Returns an inverse MackeyHom witnessing that f is an isomorphism, or None."""
    if not f.is_iso():
        return None
    return f.inverse()


def extend_underlying_hom(m, l, f_e):
    """
    The unique MackeyHom m -> l restricting to f_e on underlying levels,
    where l comes from fixed_point_mackey so that its res is injective.
    """
    if l.fixed_point_of is None:
        raise EquivarianceError(f"{l.name} is not a fixed-point Mackey functor")
    if _first_difference(m.w.then(f_e), f_e.then(l.w)) is not None:
        raise EquivarianceError("underlying map does not commute with the involutions")
    if not fgab.is_injective(l.res):
        raise ConsistencyError("restriction of a fixed-point Mackey functor is not injective")
    try:
        f_g = fgab.factor_through(m.res.then(f_e), l.res)
    except IllDefinedHomError as e:
        raise ConsistencyError(f"restricted image leaves the fixed subgroup: {e}")
    return MackeyHom(m, l, f_e, f_g)


# --- Levelwise Kernels and Cokernels ---

def _induced_on_sub(hom, source_inclusion, target_inclusion, label):
    try:
        return fgab.factor_through(source_inclusion.then(hom), target_inclusion)
    except IllDefinedHomError as e:
        raise EquivarianceError(f"{label} does not restrict to the kernel: {e}")


def _induced_on_quotient(hom, source_quotient, target_quotient, label):
    try:
        return GroupHom(source_quotient, target_quotient, hom.matrix)
    except IllDefinedHomError as e:
        raise EquivarianceError(f"{label} does not descend to the cokernel: {e}")


def kernel(f):
    """Levelwise kernel with its inclusion MackeyHom."""
    k_e, i_e = fgab.kernel(f.f_e)
    k_g, i_g = fgab.kernel(f.f_g)
    src = f.source
    w = _induced_on_sub(src.w, i_e, i_e, "w")
    res = _induced_on_sub(src.res, i_g, i_e, "res")
    tran = _induced_on_sub(src.tran, i_e, i_g, "tran")
    k = MackeyZ2(k_e, w, k_g, res, tran, f"ker({src.name})")
    return k, MackeyHom(k, src, i_e, i_g)


def cokernel(f):
    """Levelwise cokernel with its projection MackeyHom."""
    c_e, p_e = fgab.cokernel(f.f_e)
    c_g, p_g = fgab.cokernel(f.f_g)
    tgt = f.target
    w = _induced_on_quotient(tgt.w, c_e, c_e, "w")
    res = _induced_on_quotient(tgt.res, c_g, c_e, "res")
    tran = _induced_on_quotient(tgt.tran, c_e, c_g, "tran")
    c = MackeyZ2(c_e, w, c_g, res, tran, f"coker({tgt.name})")
    return c, MackeyHom(tgt, c, p_e, p_g)


def is_exact(seq):
    """Levelwise exactness; returns a dict of certificates per level and the verdict."""
    e_cert = fgab.is_exact([f.f_e for f in seq])
    g_cert = fgab.is_exact([f.f_g for f in seq])
    return {"e": e_cert, "g": g_cert, "exact": e_cert.exact and g_cert.exact}


# --- Modules over the Constant Functor ---

class MackeyModule:
    """
    A Mackey functor with an action of the constant functor of a ring with
    trivial involution: one endomorphism per additive generator of the ring
    on each level, compatible with res, tran and w.
    """
    def __init__(self, mackey, ring, act_e, act_g):
        self.mackey = mackey
        self.ring = ring
        self.act_e = list(act_e)
        self.act_g = list(act_g)
        self._verify()

    def action(self, level, element):
        """The endomorphism of the given level by a ring element."""
        acts = self.act_e if level == "e" else self.act_g
        group = self.mackey.e_level if level == "e" else self.mackey.g_level
        matrix = IntMatrix.zeros(group.n_gens, group.n_gens)
        for c, act in zip(element, acts):
            if c:
                matrix = matrix + act.matrix.scale(c)
        return GroupHom(group, group, matrix, check=False)

    def _verify(self):
        ring = self.ring
        m = self.mackey
        if len(self.act_e) != ring.n_gens or len(self.act_g) != ring.n_gens:
            raise ModuleAxiomError("need one action map per additive generator of the ring on each level")
        for level, group in (("e", m.e_level), ("g", m.g_level)):
            if not self.action(level, ring.one).equals(fgab.identity_hom(group)):
                raise ModuleAxiomError(f"the unit does not act as the identity on the {level}-level")
            for r in range(ring.additive.relations.rows):
                relation = ring.additive.relations.row(r)
                if not self.action(level, relation).is_zero():
                    raise ModuleAxiomError(f"additive relation {list(relation)} does not act by zero on the {level}-level")
            for i in range(ring.n_gens):
                for j in range(ring.n_gens):
                    product = self.action(level, ring.table[i][j])
                    composite = self.action(level, ring.generator(j)).then(self.action(level, ring.generator(i)))
                    if not product.equals(composite):
                        raise ModuleAxiomError(f"action of g{i}*g{j} is not the composite on the {level}-level")
        for k in range(ring.n_gens):
            checks = (
                ("res", self.act_g[k].then(m.res), m.res.then(self.act_e[k])),
                ("tran", self.act_e[k].then(m.tran), m.tran.then(self.act_g[k])),
                ("w", self.act_e[k].then(m.w), m.w.then(self.act_e[k])),
            )
            for name, left, right in checks:
                broken = _first_difference(left, right)
                if broken is not None:
                    raise ModuleAxiomError(f"action of g{k} does not commute with {name} at generator {broken}")


def constant_module(ring):
    """The constant functor of a ring with trivial involution as a module over itself."""
    mackey = constant_mackey(ring.additive, f"i{ring.name}")
    acts = [multiplication_hom(ring, ring.generator(k)) for k in range(ring.n_gens)]
    return MackeyModule(mackey, ring, acts, acts)


def multiplication_hom(ring, element):
    rows = [ring.multiply(element, ring.generator(i)) for i in range(ring.n_gens)]
    return GroupHom(ring.additive, ring.additive, IntMatrix.from_rows(rows, ring.n_gens), check=False)


def _tensor_over(level, acts, ring_hom):
    """level ⊗_A B on generator pairs (i, j), index i * n_gens(B) + j."""
    target_ring = ring_hom.target
    n_b = target_ring.n_gens
    big = fgab.tensor(level, target_ring.additive)
    relations = []
    for k, act in enumerate(acts):
        f_a = ring_hom(ring_hom.source.generator(k))
        for i in range(level.n_gens):
            for j in range(n_b):
                left = fgab.tensor_element(act.image_of_generator(i), target_ring.generator(j))
                right = fgab.tensor_element(level.basis_vector(i), target_ring.multiply(f_a, target_ring.generator(j)))
                relations.append(tuple(a - b for a, b in zip(left, right)))
    return fgab.quotient(big, relations)


def base_change_module(module, ring_hom):
    """
    Levelwise base change M ⊗_A B along a ring map A -> B, as a module over
    the constant functor of B.
    """
    m = module.mackey
    target_ring = ring_hom.target
    e = _tensor_over(m.e_level, module.act_e, ring_hom)
    g = _tensor_over(m.g_level, module.act_g, ring_hom)
    identity_b = IntMatrix.identity(target_ring.n_gens)
    try:
        w = GroupHom(e, e, m.w.matrix.kron(identity_b))
        res = GroupHom(g, e, m.res.matrix.kron(identity_b))
        tran = GroupHom(e, g, m.tran.matrix.kron(identity_b))
    except IllDefinedHomError as e_:
        raise ModuleAxiomError(f"structure maps are not A-linear, base change is ill-defined: {e_}")
    changed = MackeyZ2(e, w, g, res, tran, f"{m.name} (x) {target_ring.name}")
    acts = []
    for k in range(target_ring.n_gens):
        mult = multiplication_hom(target_ring, target_ring.generator(k)).matrix
        acts.append((GroupHom(e, e, IntMatrix.identity(m.e_level.n_gens).kron(mult)),
                     GroupHom(g, g, IntMatrix.identity(m.g_level.n_gens).kron(mult))))
    logger.debug("base change along %s -> %s: e=%r g=%r", ring_hom.source.name, target_ring.name, e, g)
    return MackeyModule(changed, target_ring, [a for a, _ in acts], [b for _, b in acts])


def base_change(module, ring_hom):
    return base_change_module(module, ring_hom).mackey
