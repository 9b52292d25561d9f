"""
Truncated dihedral, real and cyclic simplicial sets.

A simplex of a dihedral nerve in degree q is a tuple (x_0, ..., x_q) of
monoid vectors; a simplex of a real nerve is (x_1, ..., x_q). Structure maps
are plain functions of (q, index, simplex), so subdivisions and fixed subsets
are built by composing them without copying simplex tables.
"""
import enum
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from config import config
from core.errors import (
    EquivarianceError,
    InfiniteFiberError,
    StructureError,
    TruncationDepthError,
    WindowNotStabilizedError,
)
from core.involutive_algebra import integers_sigma, natural_numbers, product_monoid, trivial_monoid

logger = logging.getLogger(__name__)


class Structure(enum.Enum):
    SIMPLICIAL = "simplicial"
    REAL = "real"
    CYCLIC = "cyclic"
    DIHEDRAL = "dihedral"


def _add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def _norm(u, coordinates=None):
    if coordinates is None:
        return sum(abs(a) for a in u)
    return sum(abs(u[c]) for c in coordinates)


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


# --- Truncated Sets ---

class TruncDihedralSet:
    """
    A degreewise finite truncation with whichever of rotation and involution
    are present.

    :param q_max: top degree
    :type q_max: int
    :param enumerate_fn: q -> iterable of the degree-q simplices
    :param face_fn: (q, i, x) -> d_i x in degree q - 1
    :param degeneracy_fn: (q, i, x) -> s_i x in degree q + 1
    :param rotation_fn: (q, x) -> t x, or None
    :param involution_fn: (q, x) -> w x, or None
    :param nondegenerate_bound: a degree above which no simplex is nondegenerate, when known
    :param degenerate_fn: (q, x) -> bool, a fast degeneracy test
    """
    def __init__(self, name, q_max, enumerate_fn, face_fn, degeneracy_fn, rotation_fn=None, involution_fn=None,
                 nondegenerate_bound=None, degenerate_fn=None, levelwise_action=None, action_order=None,
                 metadata=None):
        if q_max < 0:
            raise TruncationDepthError(f"{name}: truncation degree must be nonnegative, got {q_max}")
        self.name = name
        self.q_max = q_max
        self._enumerate = enumerate_fn
        self.face = face_fn
        self.degeneracy = degeneracy_fn
        self.rotation = rotation_fn
        self.involution = involution_fn
        self.nondegenerate_bound = nondegenerate_bound
        self._degenerate = degenerate_fn
        self.levelwise_action = levelwise_action
        self.action_order = action_order
        self.metadata = dict(metadata or {})
        self._cache = {}
        self._sets = {}

    @property
    def structure(self):
        if self.rotation is not None and self.involution is not None:
            return Structure.DIHEDRAL
        if self.rotation is not None:
            return Structure.CYCLIC
        if self.involution is not None:
            return Structure.REAL
        return Structure.SIMPLICIAL

    def _check_degree(self, q):
        if q < 0 or q > self.q_max:
            raise TruncationDepthError(f"{self.name} is truncated at degree {self.q_max}, degree {q} requested")

    def simplices(self, q):
        """Sorted tuple of the degree-q simplices, cached."""
        self._check_degree(q)
        if q not in self._cache:
            self._cache[q] = tuple(sorted(set(self._enumerate(q))))
            logger.debug("%s: %d simplices in degree %d", self.name, len(self._cache[q]), q)
        return self._cache[q]

    def iter_simplices(self, q):
        """Simplices of degree q without caching them."""
        self._check_degree(q)
        if q in self._cache:
            return iter(self._cache[q])
        return iter(self._enumerate(q))

    def simplex_set(self, q):
        if q not in self._sets:
            self._sets[q] = frozenset(self.simplices(q))
        return self._sets[q]

    def count(self, q):
        return len(self.simplices(q))

    def is_degenerate(self, q, x):
        if q == 0:
            return False
        if self._degenerate is not None:
            return self._degenerate(q, x)
        return any(self.degeneracy(q - 1, i, self.face(q, i, x)) == x for i in range(q))

    def nondegenerate(self, q):
        return [x for x in self.simplices(q) if not self.is_degenerate(q, x)]

    def nondegenerate_counts(self):
        return [len(self.nondegenerate(q)) for q in range(self.q_max + 1)]

    def with_maps(self, **overrides):
        """A copy with some structure maps replaced."""
        arguments = dict(
            name=self.name, q_max=self.q_max, enumerate_fn=self._enumerate, face_fn=self.face,
            degeneracy_fn=self.degeneracy, rotation_fn=self.rotation, involution_fn=self.involution,
            nondegenerate_bound=self.nondegenerate_bound, degenerate_fn=self._degenerate,
            levelwise_action=self.levelwise_action, action_order=self.action_order, metadata=self.metadata,
        )
        arguments.update(overrides)
        return type(self)(**arguments)

    def __repr__(self):
        return f"{type(self).__name__}({self.name!r}, q_max={self.q_max}, {self.structure.value})"


class TruncRealSimplicialSet(TruncDihedralSet):
    """A truncated simplicial set with involution and no rotation."""
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        if self.rotation is not None:
            raise StructureError(f"{self.name}: a real simplicial set carries no rotation")
        if self.involution is None:
            raise StructureError(f"{self.name}: a real simplicial set needs an involution")


# --- Dihedral Nerve Structure Maps ---

def _cyclic_face(q, i, x):
    if i < q:
        return x[:i] + (_add(x[i], x[i + 1]),) + x[i + 2:]
    return (_add(x[q], x[0]),) + x[1:q]


def _cyclic_degeneracy_for(zero):
    def degeneracy(q, i, x):
        return x[:i + 1] + (zero,) + x[i + 1:]
    return degeneracy


def _cyclic_rotation(q, x):
    return (x[q],) + x[:q]


def _dihedral_involution_for(monoid):
    def involution(q, x):
        return (monoid.act(x[0]),) + tuple(monoid.act(y) for y in reversed(x[1:]))
    return involution


def _cyclic_degenerate_for(zero):
    def degenerate(q, x):
        return zero in x[1:]
    return degenerate


# --- Real Nerve Structure Maps ---

def _real_face(q, i, x):
    if i == 0:
        return x[1:]
    if i == q:
        return x[:-1]
    return x[:i - 1] + (_add(x[i - 1], x[i]),) + x[i + 1:]


def _real_degeneracy_for(zero):
    def degeneracy(q, i, x):
        return x[:i] + (zero,) + x[i:]
    return degeneracy


def _real_involution_for(monoid):
    def involution(q, x):
        return tuple(monoid.act(y) for y in reversed(x))
    return involution


def _real_degenerate_for(zero):
    def degenerate(q, x):
        return zero in x
    return degenerate


# --- Enumeration ---

@lru_cache(maxsize=None)
def _pointed_pool(monoid, budget):
    """Elements of a pointed monoid of degree at most budget, as (vector, degree) sorted by degree."""
    phi = monoid.positive_functional
    zero = (0,) * monoid.rank
    found = {zero: 0}
    frontier = [zero]
    while frontier:
        following = []
        for point in frontier:
            for g in monoid.generators:
                nxt = _add(point, g)
                degree = _dot(phi, nxt)
                if degree <= budget and nxt not in found:
                    found[nxt] = degree
                    following.append(nxt)
        frontier = following
    return tuple(sorted(found.items(), key=lambda item: (item[1], item[0])))


def _window_pool(monoid, weight, window, coordinates):
    """
    Candidate entries x_k (k >= 1) under a window: L1 norm on the windowed
    coordinates at most window, other coordinates between 0 and the weight's
    coordinate. Sorted by windowed norm.
    """
    ranges = []
    for c in range(monoid.rank):
        if c in coordinates:
            ranges.append(range(-window, window + 1))
        else:
            ranges.append(range(min(0, weight[c]), max(0, weight[c]) + 1))
    pool = [(v, _norm(v, coordinates)) for v in product(*ranges)
            if _norm(v, coordinates) <= window and monoid.contains(v)]
    pool.sort(key=lambda item: (item[1], item[0]))
    return pool


def _piece_simplices(monoid, orbit, q, window=None, coordinates=None):
    """
    All (x_0, ..., x_q) with entries in the monoid summing into the orbit. x_0
    is determined by the others; without a window the monoid must be pointed.
    """
    result = []
    phi = monoid.positive_functional
    for v in orbit:
        if window is None:
            total = _dot(phi, v)
            if total < 0:
                continue
            pool = _pointed_pool(monoid, total)
            budget = total
        else:
            pool = _window_pool(monoid, v, window, coordinates)
            budget = window

        def extend(prefix, remaining, budget_left, slots):
            if slots == 0:
                if monoid.contains(remaining):
                    result.append((remaining,) + prefix)
                return
            for x, cost in pool:
                if cost > budget_left:
                    break
                extend(prefix + (x,), _sub(remaining, x), budget_left - cost, slots - 1)

        extend((), tuple(v), budget, q)
    return result


def _real_simplices(monoid, q, window):
    result = []
    if window is None:
        pool = [((0,) * monoid.rank, 0)]
        window = 0
    else:
        pool = sorted(((v, _norm(v)) for v in product(range(-window, window + 1), repeat=monoid.rank)
                       if _norm(v) <= window and monoid.contains(v)), key=lambda item: (item[1], item[0]))

    def extend(prefix, budget_left, slots):
        if slots == 0:
            result.append(prefix)
            return
        for x, cost in pool:
            if cost > budget_left:
                break
            extend(prefix + (x,), budget_left - cost, slots - 1)

    extend((), window, q)
    return result


# --- Nerves ---

def dihedral_nerve_piece(monoid, orbit, q_max, window=None, window_coordinates=None):
    """
    The weight piece N^di(M; I) of the dihedral nerve in degrees up to q_max.

    :param monoid: the monoid
    :type monoid: AffineMonoid
    :param orbit: weights closed under the involution of the monoid
    :type orbit: iterable of tuple[int, ...]
    :param q_max: truncation degree
    :type q_max: int
    :param window: bound on the L1 norm of x_1 + ... + x_q on the windowed
        coordinates; makes non-pointed pieces finite at the cost of the rotation
    :raises InfiniteFiberError: for a non-pointed monoid without a window
    """
    orbit = tuple(sorted({tuple(v) for v in orbit}))
    for v in orbit:
        if tuple(monoid.act(v)) not in orbit:
            raise EquivarianceError(f"weight set {[list(u) for u in orbit]} is not closed under the involution of {monoid.name}")
    zero = (0,) * monoid.rank
    label = f"N^di({monoid.name}; {', '.join(str(list(v)) for v in orbit)})"
    if window is None:
        if not monoid.is_pointed() and q_max >= 1:
            raise InfiniteFiberError(
                f"{monoid.name} is not pointed, so {label} is infinite in degree 1; use a window or a model substitution")
        if monoid.generators and monoid.is_pointed():
            phi = monoid.positive_functional
            bound = max((_dot(phi, v) for v in orbit), default=0) // min(_dot(phi, g) for g in monoid.generators)
        else:
            bound = 0
        return TruncDihedralSet(
            label, q_max, lambda q: _piece_simplices(monoid, orbit, q),
            _cyclic_face, _cyclic_degeneracy_for(zero), _cyclic_rotation, _dihedral_involution_for(monoid),
            nondegenerate_bound=max(bound, 0), degenerate_fn=_cyclic_degenerate_for(zero),
            metadata={"weights": [list(v) for v in orbit]},
        )
    coordinates = frozenset(range(monoid.rank) if window_coordinates is None else window_coordinates)
    outside = max((_norm(v, [c for c in range(monoid.rank) if c not in coordinates]) for v in orbit), default=0)
    return TruncRealSimplicialSet(
        f"{label} [window {window}]", q_max,
        lambda q: _piece_simplices(monoid, orbit, q, window, coordinates),
        _cyclic_face, _cyclic_degeneracy_for(zero), None, _dihedral_involution_for(monoid),
        nondegenerate_bound=window + outside, degenerate_fn=_cyclic_degenerate_for(zero),
        metadata={"weights": [list(v) for v in orbit], "window": window},
    )


def real_nerve(monoid, q_max, window=None):
    """
    The real nerve N^σ M in degrees up to q_max. The window bounds the total L1
    mass of (x_1, ..., x_q), which is preserved by faces, degeneracies and w.

    :raises InfiniteFiberError: when M has nonzero elements and no window is given
    """
    zero = (0,) * monoid.rank
    if window is None and monoid.generators:
        raise InfiniteFiberError(f"the real nerve of {monoid.name} is infinite; a window is required")
    label = f"N^sigma({monoid.name})" + ("" if window is None else f" [window {window}]")
    return TruncRealSimplicialSet(
        label, q_max, lambda q: _real_simplices(monoid, q, window),
        _real_face, _real_degeneracy_for(zero), None, _real_involution_for(monoid),
        nondegenerate_bound=window or 0, degenerate_fn=_real_degenerate_for(zero),
        metadata={"window": window},
    )


def circle_model(q_max=None):
    """
    The reflection circle Δ¹/∂Δ¹: the real nerve of N with total mass at most 1.
    One nondegenerate simplex in degrees 0 and 1, both fixed by w.
    """
    q_max = 2 * config.DEFAULT_Q_MAX + 1 if q_max is None else q_max
    return real_nerve(natural_numbers(), q_max, window=1).with_maps(name="S^sigma")


def point(q_max=None):
    q_max = config.DEFAULT_Q_MAX if q_max is None else q_max
    return real_nerve(trivial_monoid(1), q_max).with_maps(name="pt")


# --- Subdivisions ---

def sd_sigma(x):
    """Segal's edgewise subdivision: degree q is X_{2q+1}, with the levelwise involution."""
    if x.involution is None:
        raise StructureError(f"{x.name} has no involution to subdivide")
    q_out = (x.q_max - 1) // 2
    if q_out < 0:
        raise TruncationDepthError(f"{x.name} is truncated at degree {x.q_max}, subdivision needs degree 1")

    def enumerate_fn(q):
        return x.iter_simplices(2 * q + 1)

    def face(q, i, s):
        return x.face(2 * q, q - i, x.face(2 * q + 1, q + 1 + i, s))

    def degeneracy(q, i, s):
        return x.degeneracy(2 * q + 2, q - i, x.degeneracy(2 * q + 1, q + 1 + i, s))

    def involution(q, s):
        return x.involution(2 * q + 1, s)

    return TruncDihedralSet(f"sd_sigma {x.name}", q_out, enumerate_fn, face, degeneracy,
                            levelwise_action=involution, action_order=2, metadata={"subdivided": x.name})


def sd_r(x, r):
    """Edgewise subdivision of a cyclic set: degree q is X_{r(q+1)-1}, with C_r generated by t^{q+1}."""
    if r < 1:
        raise StructureError(f"subdivision order must be positive, got {r}")
    if x.rotation is None:
        raise StructureError(f"{x.name} has no rotation to subdivide")
    q_out = (x.q_max + 1) // r - 1
    if q_out < 0:
        raise TruncationDepthError(f"{x.name} is truncated at degree {x.q_max}, sd_{r} needs degree {r - 1}")

    def enumerate_fn(q):
        return x.iter_simplices(r * (q + 1) - 1)

    def face(q, i, s):
        degree = r * (q + 1) - 1
        for k in reversed(range(r)):
            s = x.face(degree, i + k * (q + 1), s)
            degree -= 1
        return s

    def degeneracy(q, i, s):
        degree = r * (q + 1) - 1
        for k in reversed(range(r)):
            s = x.degeneracy(degree, i + k * (q + 1), s)
            degree += 1
        return s

    def action(q, s):
        degree = r * (q + 1) - 1
        for _ in range(q + 1):
            s = x.rotation(degree, s)
        return s

    return TruncDihedralSet(f"sd_{r} {x.name}", q_out, enumerate_fn, face, degeneracy,
                            levelwise_action=action, action_order=r, metadata={"subdivided": x.name})


# --- Fixed Points ---

def fixed_subset(x):
    """
    The degreewise fixed simplices of the levelwise group action (the
    involution after sd_sigma, C_r after sd_r) with the restricted faces and
    degeneracies.

    :raises StructureError: when a structure map leaves the fixed subset
    """
    act = x.levelwise_action
    if act is None:
        raise StructureError(f"{x.name} has no levelwise action; subdivide it first")

    def enumerate_fn(q):
        return [s for s in x.iter_simplices(q) if act(q, s) == s]

    fixed = TruncDihedralSet(f"{x.name}^fixed", x.q_max, enumerate_fn, x.face, x.degeneracy,
                             nondegenerate_bound=x.nondegenerate_bound, degenerate_fn=x._degenerate,
                             metadata={"fixed_points_of": x.name})
    _verify_closure(fixed)
    return fixed


def _verify_closure(fixed):
    for q in range(fixed.q_max + 1):
        lower = fixed.simplex_set(q - 1) if q >= 1 else None
        upper = fixed.simplex_set(q + 1) if q < fixed.q_max else None
        for s in fixed.simplices(q):
            if lower is not None:
                for i in range(q + 1):
                    if fixed.face(q, i, s) not in lower:
                        raise StructureError(f"face d_{i} of fixed simplex {s} in degree {q} is not fixed")
            if upper is not None:
                for i in range(q + 1):
                    if fixed.degeneracy(q, i, s) not in upper:
                        raise StructureError(f"degeneracy s_{i} of fixed simplex {s} in degree {q} is not fixed")


# --- Components ---

class _UnionFind:
    def __init__(self, items):
        self.parent = {item: item for item in items}

    def find(self, item):
        root = item
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[item] != root:
            self.parent[item], item = root, self.parent[item]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra

    def classes(self):
        grouped = {}
        for item in self.parent:
            grouped.setdefault(self.find(item), []).append(item)
        return tuple(sorted(tuple(sorted(members)) for members in grouped.values()))


@dataclass(frozen=True)
class Pi0Result:
    count: int
    classes: tuple

    @property
    def representatives(self):
        return tuple(members[0] for members in self.classes)


def pi0(x):
    """Connected components from vertices and edges."""
    vertices = x.simplices(0)
    finder = _UnionFind(vertices)
    if x.q_max >= 1:
        for edge in x.simplices(1):
            finder.union(x.face(1, 0, edge), x.face(1, 1, edge))
    classes = finder.classes()
    return Pi0Result(len(classes), classes)


@dataclass(frozen=True)
class VertexEdgeFamily:
    """An infinite graph given by its finite windows: vertices(B) and edges(B) as vertex pairs."""
    name: str
    vertices: object
    edges: object


@dataclass(frozen=True)
class WindowedPi0:
    count: int
    bounds: tuple
    classes: tuple


def _partition(family, bound, inner):
    finder = _UnionFind(family.vertices(bound))
    for u, v in family.edges(bound):
        finder.union(u, v)
    restricted = {}
    for vertex in inner:
        restricted.setdefault(finder.find(vertex), []).append(vertex)
    return tuple(sorted(tuple(sorted(members)) for members in restricted.values()))


def pi0_windowed(family, bound):
    """
    Components of the inner window's vertices, computed at the bound and the
    following bounds; certified only when all runs agree.

    :raises WindowNotStabilizedError: when the class assignments drift
    """
    inner = family.vertices(bound)
    bounds = tuple(bound + k for k in range(config.PI0_WINDOW_STEPS))
    partitions = [_partition(family, b, inner) for b in bounds]
    if any(p != partitions[0] for p in partitions[1:]):
        counts = [len(p) for p in partitions]
        raise WindowNotStabilizedError(f"{family.name}: components {counts} at bounds {list(bounds)} do not agree")
    logger.info("%s: %d components, stable at bounds %s", family.name, len(partitions[0]), list(bounds))
    return WindowedPi0(len(partitions[0]), bounds, partitions[0])


def real_integer_circle_family():
    """
    Fixed vertices and edges of the subdivided real nerve of Z: vertices x_1,
    edges (x_1, x_2, x_1) joining x_2 to 2x_1 + x_2.
    """
    def vertices(bound):
        return [((x,),) for x in range(-bound, bound + 1)]

    def edges(bound):
        pairs = []
        for x1, x2 in product(range(-bound, bound + 1), repeat=2):
            edge = ((x1,), (x2,), (x1,))
            u = _real_face(2, 1, _real_face(3, 2, edge))
            v = _real_face(2, 0, _real_face(3, 3, edge))
            if all(abs(c[0][0]) <= bound for c in (u, v)):
                pairs.append((u, v))
        return pairs

    return VertexEdgeFamily("(B^sigma Z)^Z/2", vertices, edges)


def dihedral_integer_family(j):
    """
    Fixed vertices (x_0, j - x_0) and edges (x_0, x_1, x_2, x_1) of the
    subdivided weight-j piece of the dihedral nerve of Z.
    """
    def vertices(bound):
        return [((x0,), (j - x0,)) for x0 in range(-bound, bound + 1)]

    def edges(bound):
        pairs = []
        for x0, x1 in product(range(-bound, bound + 1), repeat=2):
            x2 = j - x0 - 2 * x1
            edge = ((x0,), (x1,), (x2,), (x1,))
            u = _cyclic_face(2, 1, _cyclic_face(3, 2, edge))
            v = _cyclic_face(2, 0, _cyclic_face(3, 3, edge))
            if all(abs(c[0][0]) <= bound for c in (u, v)):
                pairs.append((u, v))
        return pairs

    return VertexEdgeFamily(f"(B^di(Z;{j}))^Z/2", vertices, edges)


# --- Structure Validation ---

@dataclass(frozen=True)
class Violation:
    identity: str
    degree: int
    indices: tuple
    simplex: tuple


@dataclass
class StructureReport:
    name: str
    structure: str
    checked: int = 0
    violation: Violation = None

    @property
    def passed(self):
        return self.violation is None


def _power(f, n, q, s):
    for _ in range(n):
        s = f(q, s)
    return s


def validate_structure(x):
    """
    Checks the simplicial identities, and the cyclic, real and dihedral ones
    where the structure is present, on every simplex up to q_max - 1 (faces
    up to q_max). Stops at the first violation.
    """
    report = StructureReport(x.name, x.structure.value)
    d, s, t, w = x.face, x.degeneracy, x.rotation, x.involution
    c = x.levelwise_action

    def check(identity, q, indices, simplex, left, right):
        report.checked += 1
        if left != right:
            report.violation = Violation(identity, q, indices, simplex)
            return False
        return True

    for q in range(x.q_max + 1):
        below = x.simplex_set(q - 1) if q >= 1 else None
        for simplex in x.simplices(q):
            if below is not None:
                for i in range(q + 1):
                    if not check("face lands in the truncation", q, (i,), simplex, d(q, i, simplex) in below, True):
                        return report
            if q >= 2:
                for j in range(q + 1):
                    for i in range(j):
                        if not check("d_i d_j = d_{j-1} d_i", q, (i, j), simplex,
                                     d(q - 1, i, d(q, j, simplex)), d(q - 1, j - 1, d(q, i, simplex))):
                            return report
            if t is not None:
                rotated = t(q, simplex)
                if not check("t^{q+1} = id", q, (), simplex, _power(t, q + 1, q, simplex), simplex):
                    return report
                if q >= 1:
                    if not check("d_0 t = d_q", q, (0,), simplex, d(q, 0, rotated), d(q, q, simplex)):
                        return report
                    for i in range(1, q + 1):
                        if not check("d_i t = t d_{i-1}", q, (i,), simplex,
                                     d(q, i, rotated), t(q - 1, d(q, i - 1, simplex))):
                            return report
            if w is not None:
                if not check("w^2 = id", q, (), simplex, w(q, w(q, simplex)), simplex):
                    return report
                if q >= 1:
                    for i in range(q + 1):
                        if not check("d_i w = w d_{q-i}", q, (i,), simplex,
                                     d(q, i, w(q, simplex)), w(q - 1, d(q, q - i, simplex))):
                            return report
                if t is not None:
                    inverse_rotation = _power(t, q, q, w(q, simplex))
                    if not check("w t = t^{-1} w", q, (), simplex, w(q, t(q, simplex)), inverse_rotation):
                        return report
            if c is not None:
                if not check("levelwise action has the stated order", q, (), simplex,
                             _power(c, x.action_order, q, simplex), simplex):
                    return report
                if q >= 1:
                    for i in range(q + 1):
                        if not check("faces commute with the levelwise action", q, (i,), simplex,
                                     d(q, i, c(q, simplex)), c(q - 1, d(q, i, simplex))):
                            return report
            if q < x.q_max:
                for j in range(q + 1):
                    sj = s(q, j, simplex)
                    for i in range(q + 2):
                        if i < j:
                            expected = s(q - 1, j - 1, d(q, i, simplex))
                        elif i in (j, j + 1):
                            expected = simplex
                        else:
                            expected = s(q - 1, j, d(q, i - 1, simplex))
                        if not check("d_i s_j", q, (i, j), simplex, d(q + 1, i, sj), expected):
                            return report
                    if q + 1 < x.q_max:
                        for i in range(j + 1):
                            if not check("s_i s_j = s_{j+1} s_i", q, (i, j), simplex,
                                         s(q + 1, i, sj), s(q + 1, j + 1, s(q, i, simplex))):
                                return report
                    if t is not None and j >= 1:
                        if not check("s_i t = t s_{i-1}", q, (j,), simplex,
                                     s(q, j, t(q, simplex)), t(q + 1, s(q, j - 1, simplex))):
                            return report
                    if c is not None:
                        if not check("degeneracies commute with the levelwise action", q, (j,), simplex,
                                     s(q, j, c(q, simplex)), c(q + 1, sj)):
                            return report
                    if w is not None:
                        if not check("s_i w = w s_{q-i}", q, (j,), simplex,
                                     s(q, j, w(q, simplex)), w(q + 1, s(q, q - j, simplex))):
                            return report
                if t is not None:
                    if not check("s_0 t = t^2 s_q", q, (0,), simplex,
                                 s(q, 0, t(q, simplex)), _power(t, 2, q + 1, s(q, q, simplex))):
                        return report
    logger.debug("%s: %d identities checked", x.name, report.checked)
    return report


# --- Maps ---

class SimplicialMap:
    """A degreewise map fn(q, simplex) between truncated sets."""
    def __init__(self, source, target, fn, name=""):
        self.source = source
        self.target = target
        self.fn = fn
        self.name = name

    def __call__(self, q, simplex):
        return self.fn(q, simplex)

    def validate(self):
        """
        Raises StructureError unless the map lands in the target and commutes
        with faces and degeneracies, and with rotation and involution when both
        sides carry them.
        """
        src, tgt = self.source, self.target
        top = min(src.q_max, tgt.q_max)
        for q in range(top + 1):
            members = tgt.simplex_set(q)
            for simplex in src.simplices(q):
                image = self.fn(q, simplex)
                if image not in members:
                    raise StructureError(f"{self.name}: image of {simplex} is not a degree-{q} simplex of {tgt.name}")
                for i in range(q + 1 if q >= 1 else 0):
                    if self.fn(q - 1, src.face(q, i, simplex)) != tgt.face(q, i, image):
                        raise StructureError(f"{self.name} does not commute with d_{i} at {simplex}")
                if q < top:
                    for i in range(q + 1):
                        if self.fn(q + 1, src.degeneracy(q, i, simplex)) != tgt.degeneracy(q, i, image):
                            raise StructureError(f"{self.name} does not commute with s_{i} at {simplex}")
                if src.involution is not None and tgt.involution is not None:
                    if self.fn(q, src.involution(q, simplex)) != tgt.involution(q, image):
                        raise EquivarianceError(f"{self.name} does not commute with w at {simplex}")
                if src.rotation is not None and tgt.rotation is not None:
                    if self.fn(q, src.rotation(q, simplex)) != tgt.rotation(q, image):
                        raise EquivarianceError(f"{self.name} does not commute with t at {simplex}")
        return True


# --- Witnesses ---

@dataclass
class IsoWitness:
    """Per degree (source count, target count, bijective) and the first incompatibility, if any."""
    name: str
    degrees: dict = field(default_factory=dict)
    failure: str = ""

    @property
    def passed(self):
        return not self.failure and all(entry[2] for entry in self.degrees.values())


def _compare_degree(witness, q, images, target_set, source_count):
    bijective = len(set(images)) == source_count and set(images) == target_set
    witness.degrees[q] = (source_count, len(target_set), bijective)
    return bijective


def shuffle_iso_check(first, second, first_orbit, second_orbit, q_max, window=None):
    """
    The map N^di(M x L; I x J) -> N^di(M; I) x N^di(L; J) splitting each entry
    into its two factors, checked to be a degreewise bijection commuting with
    the structure maps. The window, if given, applies to the second factor.
    """
    joint = product_monoid(first, second)
    split_at = first.rank
    orbit = [tuple(u) + tuple(v) for u in first_orbit for v in second_orbit]
    coordinates = range(split_at, joint.rank) if window is not None else None
    left = dihedral_nerve_piece(joint, orbit, q_max, window, coordinates)
    a = dihedral_nerve_piece(first, first_orbit, q_max)
    b = dihedral_nerve_piece(second, second_orbit, q_max, window)
    witness = IsoWitness(f"shuffle {left.name}")

    def split(x):
        return tuple(y[:split_at] for y in x), tuple(y[split_at:] for y in x)

    for q in range(q_max + 1):
        images = [split(x) for x in left.simplices(q)]
        target = {(u, v) for u in a.simplices(q) for v in b.simplices(q)}
        if not _compare_degree(witness, q, images, target, len(left.simplices(q))):
            witness.failure = f"not bijective in degree {q}"
            return witness
        for x, (u, v) in zip(left.simplices(q), images):
            for i in range(q + 1 if q >= 1 else 0):
                if split(left.face(q, i, x)) != (a.face(q, i, u), b.face(q, i, v)):
                    witness.failure = f"d_{i} incompatible at {x}"
                    return witness
            if q < q_max:
                for i in range(q + 1):
                    if split(left.degeneracy(q, i, x)) != (a.degeneracy(q, i, u), b.degeneracy(q, i, v)):
                        witness.failure = f"s_{i} incompatible at {x}"
                        return witness
            if split(left.involution(q, x)) != (a.involution(q, u), b.involution(q, v)):
                witness.failure = f"w incompatible at {x}"
                return witness
            if left.rotation is not None and split(left.rotation(q, x)) != (a.rotation(q, u), b.rotation(q, v)):
                witness.failure = f"t incompatible at {x}"
                return witness
    logger.info("%s: bijective in degrees 0..%d", witness.name, q_max)
    return witness


def sigma_orbit_split_check(a, q_max, window):
    """
    The real isomorphism N^di(Z^σ; {a, -a}) -> {a, -a} x N^σ Z^σ sending
    (x_0, ..., x_q) to (x_0 + ... + x_q, (x_1, ..., x_q)), on a finite window.
    """
    monoid = integers_sigma()
    orbit = sorted({(a,), (-a,)})
    left = dihedral_nerve_piece(monoid, orbit, q_max, window)
    right = real_nerve(monoid, q_max, window)
    witness = IsoWitness(f"sigma split {left.name}")

    def split(x):
        total = x[0]
        for y in x[1:]:
            total = _add(total, y)
        return total, x[1:]

    for q in range(q_max + 1):
        images = [split(x) for x in left.simplices(q)]
        target = {(v, y) for v in orbit for y in right.simplices(q)}
        if not _compare_degree(witness, q, images, target, len(left.simplices(q))):
            witness.failure = f"not bijective in degree {q}"
            return witness
        for x, (v, y) in zip(left.simplices(q), images):
            for i in range(q + 1 if q >= 1 else 0):
                if split(left.face(q, i, x)) != (v, right.face(q, i, y)):
                    witness.failure = f"d_{i} incompatible at {x}"
                    return witness
            if split(left.involution(q, x)) != (monoid.act(v), right.involution(q, y)):
                witness.failure = f"w incompatible at {x}"
                return witness
    return witness


@dataclass
class PowerMapReport:
    j: int
    r: int
    q_max: int
    degrees: dict = field(default_factory=dict)
    empty_weights: dict = field(default_factory=dict)
    failure: str = ""

    @property
    def passed(self):
        return (not self.failure and all(entry[2] for entry in self.degrees.values())
                and all(self.empty_weights.values()))


def cyclic_fixed_points_empty(weight, r, q_max):
    """Whether sd_r N^di(N; weight) has no C_r-fixed simplex in degrees up to q_max."""
    piece = dihedral_nerve_piece(natural_numbers(), [(weight,)], r * (q_max + 1) - 1)
    subdivided = sd_r(piece, r)
    for q in range(q_max + 1):
        if any(subdivided.levelwise_action(q, s) == s for s in subdivided.iter_simplices(q)):
            return False
    return True


def power_map_fixed_iso_check(j, r, q_max):
    """
    The r-fold power map N^di(N; j)_q -> (sd_r N^di(N; rj))_q, x -> (x, ..., x),
    checked to be a bijection onto the C_r-fixed simplices commuting with faces
    and degeneracies; fixed points for weights not divisible by r are checked
    to be empty.
    """
    report = PowerMapReport(j, r, q_max)
    monoid = natural_numbers()
    source = dihedral_nerve_piece(monoid, [(j,)], q_max)
    subdivided = sd_r(dihedral_nerve_piece(monoid, [(r * j,)], r * (q_max + 1) - 1), r)
    for q in range(q_max + 1):
        fixed = {s for s in subdivided.iter_simplices(q) if subdivided.levelwise_action(q, s) == s}
        images = [x * r for x in source.simplices(q)]
        _compare_degree(report, q, images, fixed, len(source.simplices(q)))
        for x in source.simplices(q):
            power = x * r
            for i in range(q + 1 if q >= 1 else 0):
                if source.face(q, i, x) * r != subdivided.face(q, i, power):
                    report.failure = f"d_{i} incompatible at {x}"
                    return report
            if q < q_max:
                for i in range(q + 1):
                    if source.degeneracy(q, i, x) * r != subdivided.degeneracy(q, i, power):
                        report.failure = f"s_{i} incompatible at {x}"
                        return report
    for weight in range(1, max(r * j, r)):
        if weight % r:
            report.empty_weights[weight] = cyclic_fixed_points_empty(weight, r, q_max)
    logger.info("power map j=%d r=%d: passed=%s", j, r, report.passed)
    return report


def circle_fixed_points():
    """Components of the fixed subset of the subdivided reflection circle."""
    return pi0(fixed_subset(sd_sigma(circle_model())))


def rotation_order_check(x):
    """t^{q+1} = id on every simplex; returns the first failing (degree, simplex) or None."""
    if x.rotation is None:
        raise StructureError(f"{x.name} has no rotation")
    for q in range(x.q_max + 1):
        for simplex in x.simplices(q):
            if _power(x.rotation, q + 1, q, simplex) != simplex:
                return q, simplex
    return None


def euler_characteristic(x):
    """Alternating sum of nondegenerate counts up to the certified bound, or q_max without one."""
    top = x.q_max if x.nondegenerate_bound is None else min(x.q_max, x.nondegenerate_bound)
    return sum((-1) ** q * len(x.nondegenerate(q)) for q in range(top + 1))
