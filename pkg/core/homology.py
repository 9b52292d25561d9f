"""
Integer chain complexes with chosen bases, homology by Smith normal form,
and the fiber, cone, shift, sum and tensor constructions on them.

Boundaries use the row convention of fgab: d_q is a rank(q) x rank(q-1)
matrix whose row k is the boundary of basis element k.
"""
import logging
from dataclasses import dataclass
from itertools import product

from core import fgab
from core.errors import ConsistencyError, DegreeOutOfRangeError, StructureError
from core.fgab import GroupHom, IntMatrix

logger = logging.getLogger(__name__)


def _min_top(*tops):
    finite = [t for t in tops if t is not None]
    return min(finite) if finite else None


class ChainComplex:
    """
    :param bases: degree -> list of basis labels
    :type bases: dict[int, list]
    :param boundaries: degree q -> d_q, a rank(q) x rank(q-1) IntMatrix
    :type boundaries: dict[int, IntMatrix]
    :param valid_top: highest degree whose homology is trustworthy, None for all
    :type valid_top: int | None
    """
    def __init__(self, bases, boundaries=None, valid_top=None, name=""):
        self.bases = {q: tuple(labels) for q, labels in sorted(bases.items()) if labels}
        self.valid_top = valid_top
        self.name = name
        self._index = {q: {label: k for k, label in enumerate(labels)} for q, labels in self.bases.items()}
        self._boundaries = {}
        for q, matrix in (boundaries or {}).items():
            if self.rank(q) == 0 or self.rank(q - 1) == 0:
                continue
            if (matrix.rows, matrix.cols) != (self.rank(q), self.rank(q - 1)):
                raise StructureError(f"{name}: d_{q} is {matrix.rows}x{matrix.cols}, expected "
                                     f"{self.rank(q)}x{self.rank(q - 1)}")
            if not matrix.is_zero():
                self._boundaries[q] = matrix
        for q in self.bases:
            if q in self._boundaries and q - 1 in self._boundaries:
                if not (self._boundaries[q] @ self._boundaries[q - 1]).is_zero():
                    raise ConsistencyError(f"{name}: d_{q - 1} d_{q} is not zero")

    def rank(self, q):
        return len(self.bases.get(q, ()))

    def degrees(self):
        return list(self.bases)

    def bottom(self):
        return min(self.bases) if self.bases else 0

    def top(self):
        return max(self.bases) if self.bases else -1

    def boundary(self, q):
        if q in self._boundaries:
            return self._boundaries[q]
        return IntMatrix.zeros(self.rank(q), self.rank(q - 1))

    def index(self, q, label):
        return self._index[q][label]

    def labels(self, q):
        return self.bases.get(q, ())

    def is_valid(self, q):
        return self.valid_top is None or q <= self.valid_top

    def valid_degrees(self):
        """Degrees from the bottom up to the valid top (or the top degree when unbounded)."""
        if not self.bases:
            return []
        top = self.top() if self.valid_top is None else min(self.valid_top, self.top())
        return list(range(self.bottom(), top + 1))

    def euler_characteristic(self):
        return sum((-1) ** q * self.rank(q) for q in self.bases)

    def __repr__(self):
        ranks = {q: self.rank(q) for q in self.bases}
        return f"ChainComplex({self.name!r}, ranks={ranks}, valid_top={self.valid_top})"


def zero_complex(name="0"):
    return ChainComplex({}, name=name)


def concentrated(group_rank, degree, name=""):
    """Z^group_rank in a single degree with zero boundary."""
    return ChainComplex({degree: [(degree, k) for k in range(group_rank)]}, name=name or f"Z^{group_rank}[{degree}]")


# --- Chain Maps ---

class ChainMap:
    """
    A map of chain complexes raising degree by `degree` (0 or -1 here): matrix
    q is rank_source(q) x rank_target(q + degree) and d f = f d holds on the
    valid range.
    """
    def __init__(self, source, target, matrices=None, degree=0, name="", check=True):
        self.source = source
        self.target = target
        self.degree = degree
        self.name = name
        self._matrices = {}
        for q, matrix in (matrices or {}).items():
            shape = (source.rank(q), target.rank(q + degree))
            if 0 in shape:
                continue
            if (matrix.rows, matrix.cols) != shape:
                raise StructureError(f"{name}: matrix in degree {q} is {matrix.rows}x{matrix.cols}, expected {shape}")
            if not matrix.is_zero():
                self._matrices[q] = matrix
        if check:
            self.validate()

    def matrix(self, q):
        if q in self._matrices:
            return self._matrices[q]
        return IntMatrix.zeros(self.source.rank(q), self.target.rank(q + self.degree))

    def validate(self):
        """
        :raises ConsistencyError: when the map does not commute with the boundaries
        """
        k = self.degree
        for q in self.source.degrees():
            if not (self.source.is_valid(q) and self.target.is_valid(q + k)):
                continue
            left = self.matrix(q) @ self.target.boundary(q + k)
            right = self.source.boundary(q) @ self.matrix(q - 1)
            if left != right:
                raise ConsistencyError(f"{self.name or 'chain map'} does not commute with the boundary in degree {q}")
        return True

    def then(self, other):
        """The composite: self first, then other."""
        degree = self.degree + other.degree
        matrices = {q: self.matrix(q) @ other.matrix(q + self.degree) for q in self.source.degrees()}
        return ChainMap(self.source, other.target, matrices, degree, check=False)

    def equals(self, other):
        return self.degree == other.degree and all(
            self.matrix(q) == other.matrix(q) for q in set(self.source.degrees()) | set(other.source.degrees()))

    def __add__(self, other):
        matrices = {q: self.matrix(q) + other.matrix(q) for q in self.source.degrees()}
        return ChainMap(self.source, self.target, matrices, self.degree, check=False)

    def __neg__(self):
        return ChainMap(self.source, self.target, {q: -self.matrix(q) for q in self.source.degrees()},
                        self.degree, check=False)


def identity_map(c):
    return ChainMap(c, c, {q: IntMatrix.identity(c.rank(q)) for q in c.degrees()}, check=False)


def zero_map(source, target, degree=0):
    return ChainMap(source, target, {}, degree, check=False)


# --- Homology ---

@dataclass(frozen=True)
class HomologyGroup:
    """H_q presented on a basis of the cycles; `cycles` holds that basis as rows in chain coordinates."""
    degree: int
    group: fgab.FgAbGroup
    cycles: IntMatrix


def _cycle_basis(c, q):
    rank = c.rank(q)
    if c.rank(q - 1) == 0 or q not in c._boundaries:
        return IntMatrix.identity(rank)
    return fgab.Lattice(rank, fgab.left_nullspace(c.boundary(q)).rows_list()).as_matrix()


def homology_at(c, q):
    if not c.is_valid(q):
        raise DegreeOutOfRangeError(f"{c.name}: degree {q} is above the valid range (top {c.valid_top})")
    rank = c.rank(q)
    if rank == 0:
        return HomologyGroup(q, fgab.zero_group(), IntMatrix.zeros(0, 0))
    cycles = _cycle_basis(c, q)
    relations = []
    above = c.boundary(q + 1)
    for k in range(above.rows):
        coefficients = fgab.solve(cycles, above.row(k))
        if coefficients is None:
            raise ConsistencyError(f"{c.name}: a boundary in degree {q} is not a cycle")
        relations.append(coefficients)
    group = fgab.group(cycles.rows, relations if relations else None)
    return HomologyGroup(q, group, cycles)


def homology(c, degrees=None):
    """
    :param c: the complex
    :type c: ChainComplex
    :param degrees: degrees to compute, defaulting to the whole valid range
    :returns: degree -> HomologyGroup
    :raises DegreeOutOfRangeError: when a requested degree is above the valid range
    """
    degrees = c.valid_degrees() if degrees is None else list(degrees)
    result = {q: homology_at(c, q) for q in degrees}
    logger.debug("homology of %s: %s", c.name, {q: h.group.canonical_form() for q, h in result.items()})
    return result


def homology_table(c, degrees=None):
    """Serializable rows {degree, invariant_factors, free_rank}, degrees ascending."""
    return [{"degree": q, "invariant_factors": list(h.group.invariant_factors), "free_rank": h.group.free_rank}
            for q, h in sorted(homology(c, degrees).items())]


def is_acyclic(c):
    return all(h.group.is_trivial() for h in homology(c).values())


def induced_map(f, q, source_homology=None, target_homology=None):
    """The map H_q(source) -> H_{q+deg}(target) as a GroupHom on the cycle presentations."""
    h_source = source_homology or homology_at(f.source, q)
    h_target = target_homology or homology_at(f.target, q + f.degree)
    rows = []
    for k in range(h_source.cycles.rows):
        image = f.matrix(q).apply(h_source.cycles.row(k))
        coefficients = fgab.solve(h_target.cycles, image) if h_target.cycles.rows else ()
        if coefficients is None:
            raise ConsistencyError(f"{f.name or 'chain map'} sends a cycle in degree {q} to a non-cycle")
        rows.append(coefficients)
    n = h_target.group.n_gens
    matrix = IntMatrix.from_rows(rows, n) if rows else IntMatrix.zeros(0, n)
    return GroupHom(h_source.group, h_target.group, matrix)


# --- Constructions ---

def shift(c, k):
    """C[k]_q = C_{q-k} with boundary (-1)^k d."""
    sign = -1 if k % 2 else 1
    return ChainComplex({q + k: labels for q, labels in c.bases.items()},
                        {q + k: c.boundary(q).scale(sign) for q in c.bases},
                        None if c.valid_top is None else c.valid_top + k, f"{c.name}[{k}]")


def direct_sum(*complexes, name=""):
    degrees = sorted({q for c in complexes for q in c.bases})
    bases = {q: [(i, label) for i, c in enumerate(complexes) for label in c.labels(q)] for q in degrees}
    boundaries = {q: _block_diagonal([c.boundary(q) for c in complexes]) for q in degrees}
    return ChainComplex(bases, boundaries, _min_top(*(c.valid_top for c in complexes)),
                        name or " + ".join(c.name for c in complexes))


def _block_diagonal(blocks):
    blocks = [b for b in blocks]
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    if rows == 0 or cols == 0:
        return IntMatrix.zeros(rows, cols)
    data = [[0] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            data[r0 + i][c0:c0 + b.cols] = b.row(i)
        r0 += b.rows
        c0 += b.cols
    return IntMatrix.from_rows(data, cols)


def direct_sum_map(*maps):
    source = direct_sum(*(f.source for f in maps))
    target = direct_sum(*(f.target for f in maps))
    degree = maps[0].degree
    matrices = {q: _block_diagonal([f.matrix(q) for f in maps]) for q in source.degrees()}
    return ChainMap(source, target, matrices, degree, check=False)


@dataclass
class FiberSequence:
    """fib(f) with its projection to the source and the connecting map target -> fib of degree -1."""
    fiber: ChainComplex
    projection: ChainMap
    connecting: ChainMap
    map: ChainMap


def mapping_fiber(f, name=""):
    """
    fib_q = C_q + D_{q+1} with d(c, x) = (dc, f(c) - dx); the valid top is
    min(top(C), top(D) - 1).
    """
    if f.degree != 0:
        raise StructureError("mapping fibers are formed from degree-0 maps")
    c, d = f.source, f.target
    degrees = sorted({q for q in c.bases} | {q - 1 for q in d.bases})
    bases = {q: [("C", label) for label in c.labels(q)] + [("D", label) for label in d.labels(q + 1)]
             for q in degrees}
    boundaries = {}
    for q in degrees:
        top = IntMatrix.hstack(c.boundary(q), f.matrix(q), rows=c.rank(q))
        bottom = IntMatrix.hstack(IntMatrix.zeros(d.rank(q + 1), c.rank(q - 1)), -d.boundary(q + 1),
                                  rows=d.rank(q + 1))
        boundaries[q] = IntMatrix.vstack(top, bottom, cols=c.rank(q - 1) + d.rank(q))
    d_top = None if d.valid_top is None else d.valid_top - 1
    return ChainComplex(bases, boundaries, _min_top(c.valid_top, d_top), name or f"fib({f.name or c.name})")


def fiber_sequence(f):
    """The fiber with the maps of its long exact sequence, all validated as chain maps."""
    fiber = mapping_fiber(f)
    c, d = f.source, f.target
    projection = {}
    connecting = {}
    for q in fiber.degrees():
        projection[q] = IntMatrix.vstack(IntMatrix.identity(c.rank(q)), IntMatrix.zeros(d.rank(q + 1), c.rank(q)),
                                         cols=c.rank(q))
    for q in d.degrees():
        sign = -1 if q % 2 else 1
        connecting[q] = IntMatrix.hstack(IntMatrix.zeros(d.rank(q), c.rank(q - 1)),
                                         IntMatrix.identity(d.rank(q)).scale(sign), rows=d.rank(q))
    return FiberSequence(fiber, ChainMap(fiber, c, projection, name="projection"),
                         ChainMap(d, fiber, connecting, degree=-1, name="connecting"), f)


def mapping_cone(f, name=""):
    """The cofiber, fib(f) shifted up by one."""
    cone = shift(mapping_fiber(f), 1)
    cone.name = name or f"cone({f.name or f.source.name})"
    return cone


def tensor_product(c, d, name=""):
    """
    (C ⊗ D)_n = sum over p + q = n of C_p ⊗ D_q, with
    d(x ⊗ y) = dx ⊗ y + (-1)^p x ⊗ dy.
    """
    degrees = sorted({p + q for p in c.bases for q in d.bases})
    bases = {}
    for n in degrees:
        bases[n] = [((p, a), (n - p, b)) for p in sorted(c.bases) if (n - p) in d.bases
                    for a, b in product(c.labels(p), d.labels(n - p))]
    result_bases = {n: labels for n, labels in bases.items() if labels}
    boundaries = {}
    for n, labels in result_bases.items():
        lower = bases.get(n - 1, [])
        lower_index = {label: k for k, label in enumerate(lower)}
        rows = []
        for (p, a), (q, b) in labels:
            row = [0] * len(lower)
            ia, ib = c.index(p, a), d.index(q, b)
            if c.rank(p - 1):
                for k, coefficient in enumerate(c.boundary(p).row(ia)):
                    if coefficient:
                        row[lower_index[((p - 1, c.labels(p - 1)[k]), (q, b))]] += coefficient
            if d.rank(q - 1):
                sign = -1 if p % 2 else 1
                for k, coefficient in enumerate(d.boundary(q).row(ib)):
                    if coefficient:
                        row[lower_index[((p, a), (q - 1, d.labels(q - 1)[k]))]] += sign * coefficient
            rows.append(row)
        if lower:
            boundaries[n] = IntMatrix.from_rows(rows, len(lower))
    valid = None
    if c.valid_top is not None or d.valid_top is not None:
        tops = []
        if c.valid_top is not None:
            tops.append(c.valid_top + (d.bottom() if d.bases else 0))
        if d.valid_top is not None:
            tops.append(d.valid_top + (c.bottom() if c.bases else 0))
        valid = min(tops)
    return ChainComplex(result_bases, boundaries, valid, name or f"{c.name} (x) {d.name}")


def tensor_map(f, g):
    """f ⊗ g for degree-0 maps, on the bases of tensor_product."""
    if f.degree or g.degree:
        raise StructureError("tensor_map is defined for degree-0 maps")
    source = tensor_product(f.source, g.source)
    target = tensor_product(f.target, g.target)
    matrices = {}
    for n in source.degrees():
        rows = []
        for (p, a), (q, b) in source.labels(n):
            row = [0] * target.rank(n)
            fa = f.matrix(p).row(f.source.index(p, a))
            gb = g.matrix(q).row(g.source.index(q, b))
            for i, x in enumerate(fa):
                if not x:
                    continue
                for j, y in enumerate(gb):
                    if y:
                        row[target.index(n, ((p, f.target.labels(p)[i]), (q, g.target.labels(q)[j])))] += x * y
            rows.append(row)
        matrices[n] = IntMatrix.from_rows(rows, target.rank(n)) if target.rank(n) else IntMatrix.zeros(len(rows), 0)
    return ChainMap(source, target, matrices, name=f"{f.name} (x) {g.name}")


# --- Long Exact Sequences ---

@dataclass
class LesReport:
    degrees: list
    certificate: fgab.ExactnessCertificate

    @property
    def exact(self):
        return self.certificate.exact


def exact_triangle_check(first, second, third, degrees):
    """
    Exactness of ... -> H_q(A) -> H_q(B) -> H_q(C) -> H_{q-1}(A) -> ... for
    degree-0 maps first: A -> B, second: B -> C and a degree -1 map third:
    C -> A, over the given degrees (descending).
    """
    homologies = {}

    def h(complex_, q):
        key = (id(complex_), q)
        if key not in homologies:
            homologies[key] = homology_at(complex_, q)
        return homologies[key]

    sequence = []
    for q in sorted(degrees, reverse=True):
        sequence.append(induced_map(first, q, h(first.source, q), h(first.target, q)))
        sequence.append(induced_map(second, q, h(second.source, q), h(second.target, q)))
        sequence.append(induced_map(third, q, h(third.source, q), h(third.target, q - 1)))
    return fgab.is_exact(sequence)


def les_check(f):
    """Exactness of the long exact sequence of mapping_fiber(f) at every joint of the valid range."""
    sequence = fiber_sequence(f)
    fiber = sequence.fiber
    complexes = (fiber, f.source, f.target)
    low = min(c.bottom() for c in complexes)
    high = max(c.top() for c in complexes) + 1
    degrees = [q for q in range(low, high + 1) if all(c.is_valid(q) for c in complexes)]
    certificate = exact_triangle_check(sequence.projection, f, sequence.connecting, degrees)
    logger.debug("long exact sequence of %s over degrees %s: exact=%s", fiber.name, degrees, certificate.exact)
    return LesReport(degrees, certificate)


# --- Simplicial Chains ---

def normalized_chains(x):
    """
    Normalized chains of a truncated simplicial set: nondegenerate simplices
    with the alternating sum of nondegenerate faces. Valid through q_max - 1,
    or in every degree when no nondegenerate simplex exists above a certified
    bound within the truncation.

    :raises StructureError: when the certified bound is contradicted
    """
    bound = x.nondegenerate_bound
    if bound is not None and bound <= x.q_max:
        for q in range(bound + 1, x.q_max + 1):
            if x.nondegenerate(q):
                raise StructureError(f"{x.name} has nondegenerate simplices in degree {q} above its bound {bound}")
        top, valid_top = bound, None
    else:
        top, valid_top = x.q_max, x.q_max - 1
    bases = {q: x.nondegenerate(q) for q in range(top + 1)}
    index = {q: {s: k for k, s in enumerate(simplices)} for q, simplices in bases.items()}
    boundaries = {}
    for q in range(1, top + 1):
        if not bases[q] or not bases[q - 1]:
            continue
        rows = []
        for s in bases[q]:
            row = [0] * len(bases[q - 1])
            for i in range(q + 1):
                face = x.face(q, i, s)
                k = index[q - 1].get(face)
                if k is not None:
                    row[k] += -1 if i % 2 else 1
            rows.append(row)
        boundaries[q] = IntMatrix.from_rows(rows, len(bases[q - 1]))
    return ChainComplex(bases, boundaries, valid_top, f"C({x.name})")


def induced_chain_map(simplicial_map, source_chains=None, target_chains=None):
    """Chain map of a SimplicialMap on normalized chains; degenerate images go to zero."""
    source = source_chains or normalized_chains(simplicial_map.source)
    target = target_chains or normalized_chains(simplicial_map.target)
    matrices = {}
    for q in source.degrees():
        rows = []
        for s in source.labels(q):
            row = [0] * target.rank(q)
            image = simplicial_map(q, s)
            if q in target._index and image in target._index[q]:
                row[target.index(q, image)] = 1
            rows.append(row)
        matrices[q] = IntMatrix.from_rows(rows, target.rank(q)) if target.rank(q) else IntMatrix.zeros(len(rows), 0)
    return ChainMap(source, target, matrices, name=simplicial_map.name)
