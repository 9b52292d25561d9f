"""
Rings with involution on finitely generated additive groups, and affine
commutative monoids with involution inside Z^n.
"""
import logging
from dataclasses import dataclass, field
from itertools import combinations, product

from config import config
from core import fgab
from core.errors import (
    ConsistencyError,
    IllDefinedHomError,
    InfiniteFiberError,
    MonoidError,
    NotARingHomError,
    RingAxiomError,
)
from core.fgab import FgAbGroup, GroupHom, IntMatrix

logger = logging.getLogger(__name__)


# --- Rings ---

class InvolutiveRing:
    """
    Commutative ring whose additive group is an FgAbGroup.

    :param name: label used in reports
    :type name: str
    :param additive: the additive group
    :type additive: FgAbGroup
    :param generator_names: one name per additive generator
    :type generator_names: list[str]
    :param table: table[i][j] is the product of generators i and j as a vector
    :type table: list[list[tuple[int, ...]]]
    :param one: the unit as a vector
    :type one: tuple[int, ...]
    :param involution: the involution as a GroupHom on the additive group
    :type involution: GroupHom
    """
    def __init__(self, name, additive, generator_names, table, one, involution=None):
        self.name = name
        self.additive = additive
        self.generator_names = list(generator_names)
        n = additive.n_gens
        self.table = [[tuple(table[i][j]) for j in range(n)] for i in range(n)]
        self.one = tuple(one)
        if involution is None:
            involution = fgab.identity_hom(additive)
        self.involution = involution
        self._verify_axioms()

    @property
    def n_gens(self):
        return self.additive.n_gens

    def multiply(self, u, v):
        n = self.n_gens
        result = [0] * n
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if b:
                    for k, c in enumerate(self.table[i][j]):
                        result[k] += a * b * c
        return tuple(result)

    def add(self, u, v):
        return tuple(a + b for a, b in zip(u, v))

    def scale(self, k, u):
        return tuple(k * a for a in u)

    def square(self, u):
        return self.multiply(u, u)

    def generator(self, i):
        return self.additive.basis_vector(i)

    def equal(self, u, v):
        return self.additive.equal(u, v)

    def is_finite(self):
        return self.additive.is_finite()

    def elements(self):
        return self.additive.elements()

    def has_trivial_involution(self):
        return self.involution.equals(fgab.identity_hom(self.additive))

    def multiplication_hom(self):
        """The multiplication A ⊗ A -> A."""
        return fgab.bilinear_hom(self.additive, self.additive, self.additive, lambda i, j: self.table[i][j])

    def _verify_axioms(self):
        n = self.n_gens
        if len(self.one) != n:
            raise RingAxiomError("unit", f"unit has {len(self.one)} coordinates, expected {n}")
        try:
            self.multiplication_hom()
        except IllDefinedHomError as e:
            raise RingAxiomError("distributivity", f"multiplication does not respect the additive relations: {e}")
        for i in range(n):
            for j in range(i + 1, n):
                if not self.equal(self.table[i][j], self.table[j][i]):
                    raise RingAxiomError("commutativity", f"{self._name(i)}*{self._name(j)} != {self._name(j)}*{self._name(i)}")
        for i, j, k in product(range(n), repeat=3):
            left = self.multiply(self.table[i][j], self.generator(k))
            right = self.multiply(self.generator(i), self.table[j][k])
            if not self.equal(left, right):
                raise RingAxiomError(
                    "associativity",
                    f"({self._name(i)}*{self._name(j)})*{self._name(k)} != {self._name(i)}*({self._name(j)}*{self._name(k)})")
        for i in range(n):
            if not self.equal(self.multiply(self.one, self.generator(i)), self.generator(i)):
                raise RingAxiomError("unit", f"1*{self._name(i)} != {self._name(i)}")
        w = self.involution
        if not w.then(w).equals(fgab.identity_hom(self.additive)):
            raise RingAxiomError("involution order 2", "w(w(x)) != x on some generator")
        if not self.equal(w(self.one), self.one):
            raise RingAxiomError("involution unital", "w(1) != 1")
        for i in range(n):
            for j in range(i, n):
                if not self.equal(w(self.table[i][j]), self.multiply(w(self.generator(i)), w(self.generator(j)))):
                    raise RingAxiomError("involution multiplicative", f"w({self._name(i)}*{self._name(j)}) != w({self._name(i)})*w({self._name(j)})")

    def verify_exhaustively(self):
        """
        Re-checks every ring axiom on all elements of a finite ring with at
        most EXHAUSTIVE_LIMIT elements. Returns the number of elements checked,
        or None when the ring is too large or infinite.
        """
        if not self.is_finite() or self.additive.order() > config.EXHAUSTIVE_LIMIT:
            return None
        elements = self.elements()
        w = self.involution
        for x in elements:
            if not self.equal(w(w(x)), x):
                raise ConsistencyError(f"w(w({list(x)})) != {list(x)}")
            for y in elements:
                xy = self.multiply(x, y)
                if not self.equal(xy, self.multiply(y, x)):
                    raise ConsistencyError(f"{list(x)} and {list(y)} do not commute")
                if not self.equal(w(xy), self.multiply(w(x), w(y))):
                    raise ConsistencyError(f"w is not multiplicative on {list(x)}, {list(y)}")
                for z in elements:
                    if not self.equal(self.multiply(xy, z), self.multiply(x, self.multiply(y, z))):
                        raise ConsistencyError(f"associativity fails on {list(x)}, {list(y)}, {list(z)}")
        return len(elements)

    def _name(self, i):
        return self.generator_names[i] if i < len(self.generator_names) else f"g{i}"

    def __repr__(self):
        return f"InvolutiveRing({self.name!r}, additive={self.additive!r})"


def mod2(ring):
    """A/2: the cokernel of multiplication by 2 with the induced ring structure."""
    doubled = [ring.scale(2, ring.generator(i)) for i in range(ring.n_gens)]
    additive = fgab.quotient(ring.additive, doubled)
    involution = GroupHom(additive, additive, ring.involution.matrix)
    return InvolutiveRing(f"{ring.name}/2", additive, ring.generator_names, ring.table, ring.one, involution)


def frobenius(ring):
    """
    The squaring map of a ring of characteristic 2 as a GroupHom.
    Additivity is what makes squaring a homomorphism; it is checked on all
    elements when the ring is small enough to enumerate.
    """
    rows = [ring.square(ring.generator(i)) for i in range(ring.n_gens)]
    try:
        phi = GroupHom(ring.additive, ring.additive, IntMatrix.from_rows(rows, ring.n_gens) if rows
                       else IntMatrix.zeros(0, 0))
    except IllDefinedHomError as e:
        raise ConsistencyError(f"squaring is not additive on {ring.name}: {e}")
    if ring.is_finite() and ring.additive.order() <= config.EXHAUSTIVE_LIMIT:
        elements = ring.elements()
        for x in elements:
            if not ring.equal(phi(x), ring.square(x)):
                raise ConsistencyError(f"squaring disagrees with its linear extension at {list(x)}")
            for y in elements:
                if not ring.equal(phi(ring.multiply(x, y)), ring.multiply(phi(x), phi(y))):
                    raise ConsistencyError(f"squaring is not multiplicative at {list(x)}, {list(y)}")
    return phi


@dataclass(frozen=True, eq=False)
class RingHom:
    """
    Ring homomorphism compatible with the involutions; row i of matrix is the
    image of additive generator i of the source.
    """
    source: InvolutiveRing
    target: InvolutiveRing
    matrix: IntMatrix

    def __post_init__(self):
        if not isinstance(self.matrix, IntMatrix):
            object.__setattr__(self, "matrix", IntMatrix.from_rows(self.matrix, self.target.n_gens))
        try:
            hom = GroupHom(self.source.additive, self.target.additive, self.matrix)
        except IllDefinedHomError as e:
            raise NotARingHomError(f"{self.source.name} -> {self.target.name} is not additive: {e}")
        object.__setattr__(self, "additive", hom)
        if not self.target.equal(hom(self.source.one), self.target.one):
            raise NotARingHomError(f"{self.source.name} -> {self.target.name} does not preserve the unit")
        for i in range(self.source.n_gens):
            for j in range(i, self.source.n_gens):
                left = hom(self.source.table[i][j])
                right = self.target.multiply(hom.image_of_generator(i), hom.image_of_generator(j))
                if not self.target.equal(left, right):
                    raise NotARingHomError(f"f(g{i}*g{j}) != f(g{i})*f(g{j})")
        if not self.source.involution.then(hom).equals(hom.then(self.target.involution)):
            raise NotARingHomError(f"{self.source.name} -> {self.target.name} does not commute with the involutions")

    def __call__(self, vector):
        return self.additive(vector)


def identity_ring_hom(ring):
    return RingHom(ring, ring, IntMatrix.identity(ring.n_gens))


def unit_map(source, target):
    """The structure map from a ring additively generated by its unit."""
    if source.n_gens != 1:
        raise NotARingHomError(f"{source.name} is not additively generated by a single element")
    if not source.equal(source.one, (1,)):
        raise NotARingHomError(f"the generator of {source.name} is not its unit")
    return RingHom(source, target, IntMatrix.from_rows([target.one], target.n_gens))


# --- Monoids ---

@dataclass(frozen=True, order=True)
class MonoidElement:
    """
    An element of an affine monoid with a certificate: certificate[i] copies
    of generator i sum to vector. Ordering and equality use the vector only.
    """
    vector: tuple
    certificate: tuple = field(default=(), compare=False)


class AffineMonoid:
    """
    Submonoid of Z^rank generated by finitely many vectors, with an
    involution matrix (row convention, v -> v·W) preserving it.

    When inequalities are supplied the monoid is the saturated cone
    {x : l(x) >= 0 for every l}, and membership is decided by them exactly;
    the generators must then generate that cone.
    """
    def __init__(self, name, rank, generators, involution=None, inequalities=None):
        self.name = name
        self.rank = rank
        self.generators = tuple(sorted({tuple(int(x) for x in g) for g in generators if any(g)}))
        for g in self.generators:
            if len(g) != rank:
                raise MonoidError(f"generator {list(g)} does not have {rank} coordinates")
        if involution is None:
            involution = IntMatrix.identity(rank)
        elif not isinstance(involution, IntMatrix):
            involution = IntMatrix.from_rows(involution, rank)
        self.involution = involution
        self.inequalities = None if inequalities is None else tuple(tuple(l) for l in inequalities)
        self._functional = self._find_positive_functional()
        if involution @ involution != IntMatrix.identity(rank):
            raise MonoidError(f"involution of {name} does not square to the identity")
        for g in self.generators:
            if self.certificate(self.act(g)) is None:
                raise MonoidError(f"involution of {name} sends generator {list(g)} outside the monoid")

    def act(self, vector):
        return self.involution.apply(tuple(vector))

    @property
    def positive_functional(self):
        return self._functional

    def is_pointed(self):
        return self._functional is not None

    def _find_positive_functional(self):
        if not self.generators:
            return (0,) * self.rank
        for c in product(config.FUNCTIONAL_SEARCH_RANGE, repeat=self.rank):
            if all(_dot(c, g) >= 1 for g in self.generators):
                return c
        return None

    def contains(self, vector):
        vector = tuple(vector)
        if self.inequalities is not None:
            return all(_dot(l, vector) >= 0 for l in self.inequalities)
        return self.certificate(vector) is not None

    def certificate(self, vector):
        """
        Coefficients expressing vector as a sum of generators, or None.
        Complete for pointed monoids; otherwise the search depth is bounded
        by the L1 norm of the vector.
        """
        vector = tuple(vector)
        if not any(vector):
            return (0,) * len(self.generators)
        if self.inequalities is not None and not all(_dot(l, vector) >= 0 for l in self.inequalities):
            return None
        direct = self._solve_nonnegative(vector)
        if direct is not None:
            return direct
        if self._functional is not None:
            degree = _dot(self._functional, vector)
            if degree <= 0:
                return None
            depth = degree // min(_dot(self._functional, g) for g in self.generators)
        else:
            depth = 2 * sum(abs(x) for x in vector) + config.MEMBERSHIP_SLACK
        frontier = {(0,) * self.rank: (0,) * len(self.generators)}
        seen = set(frontier)
        for _ in range(depth):
            following = {}
            for point, counts in frontier.items():
                for k, g in enumerate(self.generators):
                    nxt = tuple(a + b for a, b in zip(point, g))
                    if nxt in seen:
                        continue
                    new_counts = counts[:k] + (counts[k] + 1,) + counts[k + 1:]
                    if nxt == vector:
                        return new_counts
                    seen.add(nxt)
                    following[nxt] = new_counts
            frontier = following
        if self.inequalities is not None:
            raise MonoidError(f"{list(vector)} satisfies the cone inequalities of {self.name} but is not a sum of its generators")
        return None

    def _solve_nonnegative(self, vector):
        if not self.generators:
            return None
        coefficients = fgab.solve(IntMatrix.from_rows(self.generators, self.rank), vector)
        if coefficients is None:
            return None
        coefficients = list(coefficients)
        index = {g: k for k, g in enumerate(self.generators)}
        for k, g in enumerate(self.generators):
            opposite = index.get(tuple(-x for x in g))
            if coefficients[k] < 0 and opposite is not None:
                coefficients[opposite] -= coefficients[k]
                coefficients[k] = 0
        return tuple(coefficients) if min(coefficients) >= 0 else None

    def element(self, vector):
        cert = self.certificate(vector)
        if cert is None:
            raise MonoidError(f"{list(vector)} is not in {self.name}")
        return MonoidElement(tuple(vector), cert)

    def __repr__(self):
        return f"AffineMonoid({self.name!r}, rank={self.rank}, generators={[list(g) for g in self.generators]})"


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def natural_numbers():
    return AffineMonoid("N", 1, [(1,)], inequalities=[(1,)])


def negative_naturals():
    return AffineMonoid("-N", 1, [(-1,)], inequalities=[(-1,)])


def integers():
    return AffineMonoid("Z", 1, [(1,), (-1,)], inequalities=[])


def integers_sigma():
    return AffineMonoid("Z^sigma", 1, [(1,), (-1,)], involution=[[-1]], inequalities=[])


def trivial_monoid(rank=1):
    forms = [tuple(s * int(k == i) for k in range(rank)) for i in range(rank) for s in (1, -1)]
    return AffineMonoid("0", rank, [], inequalities=forms)


def product_monoid(first, second):
    rank = first.rank + second.rank
    generators = [g + (0,) * second.rank for g in first.generators] + [(0,) * first.rank + h for h in second.generators]
    inequalities = None
    if first.inequalities is not None and second.inequalities is not None:
        inequalities = [l + (0,) * second.rank for l in first.inequalities] + \
                       [(0,) * first.rank + l for l in second.inequalities]
    return AffineMonoid(f"{first.name} x {second.name}", rank, generators,
                        involution=IntMatrix.block_diagonal(first.involution, second.involution),
                        inequalities=inequalities)


def projective_forms(n):
    """The n+1 linear forms cutting out the charts of projective n-space: x_1..x_n and -(x_1+...+x_n)."""
    forms = [tuple(int(k == i) for k in range(n)) for i in range(n)]
    forms.append(tuple(-1 for _ in range(n)))
    return forms


def cone_monoid(n, indices):
    """
    The cone M_I = {x in Z^n : l_i(x) >= 0 for i in I} for a subset I of
    {1, ..., n+1}, with a generating set read off a unimodular completion
    of the chosen forms.
    """
    forms = projective_forms(n)
    chosen = [forms[i - 1] for i in sorted(indices)]
    label = "M_{" + ",".join(str(i) for i in sorted(indices)) + "}"
    if len(chosen) > n:
        return AffineMonoid(label, n, [], inequalities=chosen)
    basis = unimodular_completion(chosen, n)
    dual = fgab.inverse_unimodular(IntMatrix.from_rows(basis, n).transpose())
    # row k of dual pairs to 1 with form k and 0 with the others
    generators = []
    for k in range(n):
        u = dual.row(k)
        generators.append(u)
        if k >= len(chosen):
            generators.append(tuple(-x for x in u))
    return AffineMonoid(label, n, generators, inequalities=chosen)


def unimodular_completion(forms, n):
    """Extends the given forms by coordinate forms to a basis of the dual lattice."""
    forms = [tuple(f) for f in forms]
    needed = n - len(forms)
    for extra in combinations(range(n), needed):
        rows = forms + [tuple(int(k == i) for k in range(n)) for i in extra]
        diagonal = fgab.snf_diagonal(IntMatrix.from_rows(rows, n))
        if len(diagonal) == n and all(d == 1 for d in diagonal):
            return rows
    raise MonoidError(f"forms {forms} do not extend to a unimodular basis")


# --- Weight Fibers ---

def elements_of_weight(monoid, weight_map, target):
    """
    All monoid elements m with m·W = target, sorted and without duplicates.

    :param monoid: the monoid
    :type monoid: AffineMonoid
    :param weight_map: rank x k matrix W of a monoid homomorphism to Z^k
    :type weight_map: IntMatrix
    :param target: the requested weight
    :type target: tuple[int, ...]
    :raises InfiniteFiberError: when no positive grading bounds the fiber
    """
    target = tuple(target)
    if weight_map.rows != monoid.rank or weight_map.cols != len(target):
        raise MonoidError(f"weight map of shape {weight_map.rows}x{weight_map.cols} does not fit rank {monoid.rank} and weight {list(target)}")
    kernel_group, _ = fgab.kernel(GroupHom(fgab.free(monoid.rank), fgab.free(weight_map.cols), weight_map))
    if kernel_group.is_trivial():
        preimage = fgab.solve(weight_map, target)
        if preimage is None:
            return []
        cert = monoid.certificate(preimage)
        return [] if cert is None else [MonoidElement(tuple(preimage), cert)]

    images = [weight_map.apply(g) for g in monoid.generators]
    for g, image in zip(monoid.generators, images):
        if not any(image):
            raise InfiniteFiberError(f"generator {list(g)} of {monoid.name} has weight zero, so weight fibers are infinite")
    grading = next((c for c in product(config.FUNCTIONAL_SEARCH_RANGE, repeat=len(target))
                    if all(_dot(c, image) >= 1 for image in images)), None)
    if grading is None:
        raise InfiniteFiberError(f"no positive grading bounds the weight fibers of {monoid.name}")
    degrees = [_dot(grading, image) for image in images]
    budget = _dot(grading, target)
    found = {}

    def extend(k, remaining, counts, vector):
        if k == len(monoid.generators):
            if remaining == 0 and weight_map.apply(vector) == target:
                found.setdefault(vector, tuple(counts))
            return
        g = monoid.generators[k]
        for c in range(remaining // degrees[k] + 1):
            extend(k + 1, remaining - c * degrees[k], counts + [c],
                   tuple(a + c * b for a, b in zip(vector, g)))

    if budget >= 0:
        extend(0, budget, [], (0,) * monoid.rank)
    logger.debug("weight %s of %s: %d elements", list(target), monoid.name, len(found))
    return [MonoidElement(v, found[v]) for v in sorted(found)]


def sigma_orbits(monoid, window):
    """
    Orbits {v, w(v)} of the involution on the monoid elements of a finite
    window, each orbit sorted, orbits sorted by their least element.
    """
    members = sorted({tuple(v) for v in window if monoid.contains(v)})
    seen = set()
    orbits = []
    for v in members:
        if v in seen:
            continue
        orbit = tuple(sorted({v, monoid.act(v)}))
        seen.update(orbit)
        orbits.append(orbit)
    return orbits


def box_window(rank, bound):
    """All vectors of Z^rank with entries in [-bound, bound]."""
    return [tuple(v) for v in product(range(-bound, bound + 1), repeat=rank)]


def norm_window(rank, bound):
    """All vectors of Z^rank with L1 norm at most bound."""
    return [v for v in box_window(rank, bound) if sum(abs(x) for x in v) <= bound]
