"""
Exact integer linear algebra for finitely generated abelian groups.

Row-vector convention throughout: a relation is a row, a homomorphism
G -> H is an (n_gens(G) x n_gens(H)) matrix whose row i is the image of
generator i, an element v maps to v·M, and "f then g" has matrix M_f·M_g.
"""
import logging
from dataclasses import dataclass, field
from itertools import product
from math import prod

from core.errors import (
    ColumnMismatchError,
    IllDefinedHomError,
    InfeasibleComputationError,
    NonComposableError,
)

logger = logging.getLogger(__name__)


# --- Matrices ---

@dataclass(frozen=True)
class IntMatrix:
    """
    Immutable integer matrix stored row-major with arbitrary-precision entries.

    :param rows: number of rows
    :type rows: int
    :param cols: number of columns
    :type cols: int
    :param entries: row-major entries, rows * cols of them
    :type entries: tuple[int, ...]
    """
    rows: int
    cols: int
    entries: tuple = ()

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError(f"matrix shape must be nonnegative, got {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, got {len(self.entries)}")

    @classmethod
    def from_rows(cls, rows, cols=None):
        rows = [tuple(int(x) for x in row) for row in rows]
        if cols is None:
            if not rows:
                raise ValueError("cannot infer the column count of a matrix with no rows")
            cols = len(rows[0])
        for i, row in enumerate(rows):
            if len(row) != cols:
                raise ColumnMismatchError(f"row {i} has {len(row)} entries, expected {cols}")
        return cls(len(rows), cols, tuple(x for row in rows for x in row))

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n):
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def diagonal(cls, values, rows=None, cols=None):
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        data = [[0] * cols for _ in range(rows)]
        for i, value in enumerate(values):
            data[i][i] = value
        return cls.from_rows(data, cols)

    @classmethod
    def vstack(cls, *blocks, cols=None):
        if cols is None:
            cols = blocks[0].cols
        for block in blocks:
            if block.cols != cols:
                raise ColumnMismatchError(f"cannot stack a block with {block.cols} columns onto {cols} columns")
        return cls(sum(b.rows for b in blocks), cols, tuple(x for b in blocks for x in b.entries))

    @classmethod
    def hstack(cls, *blocks, rows=None):
        if rows is None:
            rows = blocks[0].rows
        for block in blocks:
            if block.rows != rows:
                raise ColumnMismatchError(f"cannot place a block with {block.rows} rows beside {rows} rows")
        data = [[x for b in blocks for x in b.row(i)] for i in range(rows)]
        return cls.from_rows(data, sum(b.cols for b in blocks))

    @classmethod
    def block_diagonal(cls, *blocks):
        total_cols = sum(b.cols for b in blocks)
        data = []
        offset = 0
        for block in blocks:
            for i in range(block.rows):
                row = [0] * total_cols
                row[offset:offset + block.cols] = block.row(i)
                data.append(row)
            offset += block.cols
        return cls.from_rows(data, total_cols)

    def __getitem__(self, key):
        i, j = key
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j):
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def rows_list(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self):
        return IntMatrix(self.cols, self.rows, tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ColumnMismatchError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        other_cols = [other.column(j) for j in range(other.cols)]
        data = []
        for i in range(self.rows):
            row = self.row(i)
            data.extend(sum(a * b for a, b in zip(row, col) if a) for col in other_cols)
        return IntMatrix(self.rows, other.cols, tuple(data))

    def __add__(self, other):
        self._check_same_shape(other)
        return IntMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other):
        self._check_same_shape(other)
        return IntMatrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self):
        return self.scale(-1)

    def scale(self, k):
        return IntMatrix(self.rows, self.cols, tuple(k * a for a in self.entries))

    def kron(self, other):
        data = []
        for i in range(self.rows):
            for k in range(other.rows):
                data.extend(self[i, j] * other[k, l] for j in range(self.cols) for l in range(other.cols))
        return IntMatrix(self.rows * other.rows, self.cols * other.cols, tuple(data))

    def submatrix(self, row_indices, col_indices):
        row_indices, col_indices = list(row_indices), list(col_indices)
        return IntMatrix(len(row_indices), len(col_indices),
                         tuple(self[i, j] for i in row_indices for j in col_indices))

    def apply(self, vector):
        """Returns vector·M."""
        if len(vector) != self.rows:
            raise ColumnMismatchError(f"vector of length {len(vector)} cannot multiply a {self.rows}x{self.cols} matrix")
        result = [0] * self.cols
        for i, coefficient in enumerate(vector):
            if coefficient:
                for j, entry in enumerate(self.row(i)):
                    if entry:
                        result[j] += coefficient * entry
        return tuple(result)

    def is_zero(self):
        return not any(self.entries)

    def _check_same_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ColumnMismatchError(f"shape {self.rows}x{self.cols} does not match {other.rows}x{other.cols}")


# --- Smith Normal Form ---

def snf(m):
    """
    Smith normal form with transforms.

    Returns (S, U, V) with U·m·V = S, S diagonal with d_1 | d_2 | ... and
    nonnegative diagonal, U and V unimodular.
    """
    a = m.rows_list()
    n_rows, n_cols = m.rows, m.cols
    u = IntMatrix.identity(n_rows).rows_list()
    v = IntMatrix.identity(n_cols).rows_list()

    def swap_rows(i, j):
        if i != j:
            a[i], a[j] = a[j], a[i]
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        if i != j:
            for row in a:
                row[i], row[j] = row[j], row[i]
            for row in v:
                row[i], row[j] = row[j], row[i]

    def add_row(target, source, k):
        a[target] = [x + k * y for x, y in zip(a[target], a[source])]
        u[target] = [x + k * y for x, y in zip(u[target], u[source])]

    def add_col(target, source, k):
        for row in a:
            row[target] += k * row[source]
        for row in v:
            row[target] += k * row[source]

    t = 0
    while t < min(n_rows, n_cols):
        pivot = None
        for i in range(t, n_rows):
            for j in range(t, n_cols):
                if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])

        while True:
            clean = True
            for i in range(t + 1, n_rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // a[t][t]))
                    clean = clean and not a[i][t]
            for j in range(t + 1, n_cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // a[t][t]))
                    clean = clean and not a[t][j]
            if not clean:
                # a remainder smaller than the pivot survived; move it to the pivot
                best = (t, t)
                for i in range(t + 1, n_rows):
                    if a[i][t] and abs(a[i][t]) < abs(a[best[0]][best[1]]):
                        best = (i, t)
                for j in range(t + 1, n_cols):
                    if a[t][j] and abs(a[t][j]) < abs(a[best[0]][best[1]]):
                        best = (t, j)
                swap_rows(t, best[0])
                swap_cols(t, best[1])
                continue
            offender = next(((i, j) for i in range(t + 1, n_rows) for j in range(t + 1, n_cols)
                             if a[i][j] % a[t][t]), None)
            if offender is None:
                break
            add_row(t, offender[0], 1)

        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    return (IntMatrix.from_rows(a, n_cols), IntMatrix.from_rows(u, n_rows), IntMatrix.from_rows(v, n_cols))


def snf_diagonal(m):
    """Returns the diagonal of the Smith normal form, rank entries long."""
    s, _, _ = snf(m)
    return [s[i, i] for i in range(min(s.rows, s.cols)) if s[i, i]]


def left_nullspace(m):
    """Basis (as an IntMatrix of rows) of {x : x·m = 0}."""
    s, u, _ = snf(m)
    rank = sum(1 for i in range(min(s.rows, s.cols)) if s[i, i])
    return IntMatrix(m.rows - rank, m.rows, tuple(x for i in range(rank, m.rows) for x in u.row(i)))


def solve(m, target):
    """Returns an integer x with x·m = target, or None if there is none."""
    if len(target) != m.cols:
        raise ColumnMismatchError(f"target of length {len(target)} does not match {m.cols} columns")
    s, u, v = snf(m)
    w = v.apply(tuple(target))
    y = [0] * m.rows
    for i, value in enumerate(w):
        d = s[i, i] if i < min(s.rows, s.cols) else 0
        if d == 0:
            if value:
                return None
        else:
            if value % d:
                return None
            y[i] = value // d
    return u.apply(tuple(y))


# --- Lattices ---

class Lattice:
    """
    Sublattice of Z^dim kept as a Hermite normal form basis.
    Used to compare subgroups exactly without enumerating torsion.
    """
    def __init__(self, dim, vectors=()):
        self.dim = dim
        self.basis = self._hermite([list(vec) for vec in vectors])

    def _hermite(self, rows):
        for row in rows:
            if len(row) != self.dim:
                raise ColumnMismatchError(f"lattice vector of length {len(row)} in dimension {self.dim}")
        rows = [row for row in rows if any(row)]
        basis = []
        pivots = []
        col = 0
        while rows and col < self.dim:
            active = [row for row in rows if row[col]]
            if not active:
                col += 1
                continue
            while len(active) > 1:
                active.sort(key=lambda row: abs(row[col]))
                head = active[0]
                for row in active[1:]:
                    q = row[col] // head[col]
                    for k in range(col, self.dim):
                        row[k] -= q * head[k]
                active = [head] + [row for row in active[1:] if row[col]]
            head = active[0]
            if head[col] < 0:
                head[:] = [-x for x in head]
            basis.append(head)
            pivots.append(col)
            rows = [row for row in rows if row is not head and any(row)]
            col += 1
        for i, row in enumerate(basis):
            p = pivots[i]
            for earlier in basis[:i]:
                q = earlier[p] // row[p]
                if q:
                    for k in range(p, self.dim):
                        earlier[k] -= q * row[k]
        self.pivots = tuple(pivots)
        return tuple(tuple(row) for row in basis)

    @property
    def rank(self):
        return len(self.basis)

    def __contains__(self, vector):
        w = list(vector)
        for row, p in zip(self.basis, self.pivots):
            if w[p] % row[p]:
                return False
            q = w[p] // row[p]
            if q:
                for k in range(p, self.dim):
                    w[k] -= q * row[k]
        return not any(w)

    def issubset(self, other):
        return all(row in other for row in self.basis)

    def __eq__(self, other):
        return isinstance(other, Lattice) and self.dim == other.dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.dim, self.basis))

    def as_matrix(self):
        return IntMatrix(len(self.basis), self.dim, tuple(x for row in self.basis for x in row))


# --- Groups ---

class FgAbGroup:
    """
    Finitely generated abelian group Z^n_gens / (row span of relations).

    The canonical form (invariant factors and free rank) is computed once from
    the Smith normal form of the relations. Two groups compare equal when
    their canonical forms agree.
    """
    def __init__(self, n_gens, relations=None):
        if relations is None:
            relations = IntMatrix.zeros(0, n_gens)
        if relations.cols != n_gens:
            raise ColumnMismatchError(f"relations have {relations.cols} columns but the group has {n_gens} generators")
        self.n_gens = n_gens
        self.relations = relations
        s, _, v = snf(relations)
        self._diagonal = [s[i, i] if i < min(s.rows, s.cols) else 0 for i in range(n_gens)]
        self._v = v
        self._v_inverse = None
        self.invariant_factors = tuple(d for d in self._diagonal if d > 1)
        self.free_rank = sum(1 for d in self._diagonal if d == 0)

    def __eq__(self, other):
        return isinstance(other, FgAbGroup) and self.canonical_form() == other.canonical_form()

    def __hash__(self):
        return hash(self.canonical_form())

    def __repr__(self):
        return f"FgAbGroup(invariant_factors={list(self.invariant_factors)}, free_rank={self.free_rank})"

    def canonical_form(self):
        return (self.invariant_factors, self.free_rank)

    def is_trivial(self):
        return not self.invariant_factors and not self.free_rank

    def is_finite(self):
        return self.free_rank == 0

    def order(self):
        """Returns the number of elements, or None for an infinite group."""
        return prod(self.invariant_factors) if self.is_finite() else None

    def zero(self):
        return (0,) * self.n_gens

    def basis_vector(self, i):
        return tuple(int(k == i) for k in range(self.n_gens))

    def coordinates(self, vector):
        """
        Canonical coordinates of an element: one entry per invariant factor
        (reduced modulo it) followed by one integer per free summand.
        """
        if len(vector) != self.n_gens:
            raise ColumnMismatchError(f"element of length {len(vector)} in a group with {self.n_gens} generators")
        y = self._v.apply(tuple(vector))
        torsion = []
        free = []
        for value, d in zip(y, self._diagonal):
            if d > 1:
                torsion.append(value % d)
            elif d == 0:
                free.append(value)
        return tuple(torsion + free)

    def is_zero(self, vector):
        return not any(self.coordinates(vector))

    def equal(self, u, v):
        return self.coordinates(u) == self.coordinates(v)

    def same_presentation(self, other):
        return (self is other) or (
            self.n_gens == other.n_gens
            and Lattice(self.n_gens, self._relation_rows()) == Lattice(other.n_gens, other._relation_rows())
        )

    def _relation_rows(self):
        return [self.relations.row(i) for i in range(self.relations.rows)]

    def elements(self):
        """All elements of a finite group as generator vectors, sorted by canonical coordinates."""
        if not self.is_finite():
            raise InfeasibleComputationError(f"cannot enumerate the infinite group {self!r}")
        if self._v_inverse is None:
            self._v_inverse = inverse_unimodular(self._v)
        slots = [i for i, d in enumerate(self._diagonal) if d > 1]
        result = []
        for values in product(*(range(self._diagonal[i]) for i in slots)):
            y = [0] * self.n_gens
            for i, value in zip(slots, values):
                y[i] = value
            result.append(self._v_inverse.apply(tuple(y)))
        return result


def inverse_unimodular(m):
    """Inverse of a square unimodular matrix."""
    rows = []
    for i in range(m.rows):
        x = solve(m, tuple(int(i == j) for j in range(m.cols)))
        if x is None:
            raise ValueError("matrix is not unimodular")
        rows.append(x)
    return IntMatrix.from_rows(rows, m.rows)


def group(n_gens, relations=None):
    if relations is not None and not isinstance(relations, IntMatrix):
        relations = IntMatrix.from_rows(relations, n_gens)
    return FgAbGroup(n_gens, relations)


def cyclic(order):
    """Z/order, with order 0 meaning Z."""
    return group(1, [[order]])


def free(rank):
    return group(rank)


def zero_group():
    return group(0)


def direct_sum(*groups):
    n = sum(g.n_gens for g in groups)
    blocks = [g.relations for g in groups]
    relations = IntMatrix.block_diagonal(*blocks) if blocks else IntMatrix.zeros(0, 0)
    return FgAbGroup(n, relations)


def quotient(g, vectors):
    """G modulo the subgroup generated by vectors, on the same generators."""
    vectors = [tuple(vec) for vec in vectors]
    extra = IntMatrix.from_rows(vectors, g.n_gens) if vectors else IntMatrix.zeros(0, g.n_gens)
    return FgAbGroup(g.n_gens, IntMatrix.vstack(g.relations, extra, cols=g.n_gens))


# --- Homomorphisms ---

@dataclass(frozen=True, eq=False)
class GroupHom:
    """
    Homomorphism between presented groups, row i of matrix being the image
    of source generator i. Well-definedness is checked on construction.
    """
    source: FgAbGroup
    target: FgAbGroup
    matrix: IntMatrix
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        if not isinstance(self.matrix, IntMatrix):
            object.__setattr__(self, "matrix", IntMatrix.from_rows(self.matrix, self.target.n_gens))
        if (self.matrix.rows, self.matrix.cols) != (self.source.n_gens, self.target.n_gens):
            raise ColumnMismatchError(
                f"hom matrix is {self.matrix.rows}x{self.matrix.cols}, expected "
                f"{self.source.n_gens}x{self.target.n_gens}")
        if self.check:
            for i in range(self.source.relations.rows):
                image = self.matrix.apply(self.source.relations.row(i))
                if not self.target.is_zero(image):
                    raise IllDefinedHomError(
                        f"source relation {list(self.source.relations.row(i))} maps to the nonzero element {list(image)}")

    def __call__(self, vector):
        return self.matrix.apply(tuple(vector))

    def image_of_generator(self, i):
        return self.matrix.row(i)

    def then(self, other):
        """The composite: self first, then other."""
        if not self.target.same_presentation(other.source):
            raise NonComposableError("target of the first map is not the source of the second")
        return GroupHom(self.source, other.target, self.matrix @ other.matrix, check=False)

    def is_zero(self):
        return all(self.target.is_zero(self.matrix.row(i)) for i in range(self.source.n_gens))

    def equals(self, other):
        if self.matrix.rows != other.matrix.rows or self.matrix.cols != other.matrix.cols:
            return False
        return all(self.target.equal(self.matrix.row(i), other.matrix.row(i)) for i in range(self.source.n_gens))

    def __add__(self, other):
        return GroupHom(self.source, self.target, self.matrix + other.matrix, check=False)

    def __sub__(self, other):
        return GroupHom(self.source, self.target, self.matrix - other.matrix, check=False)

    def __neg__(self):
        return GroupHom(self.source, self.target, -self.matrix, check=False)


def identity_hom(g):
    return GroupHom(g, g, IntMatrix.identity(g.n_gens), check=False)


def zero_hom(source, target):
    return GroupHom(source, target, IntMatrix.zeros(source.n_gens, target.n_gens), check=False)


def scalar_hom(g, k):
    return GroupHom(g, g, IntMatrix.identity(g.n_gens).scale(k), check=False)


def direct_sum_hom(*homs):
    return GroupHom(direct_sum(*(h.source for h in homs)), direct_sum(*(h.target for h in homs)),
                    IntMatrix.block_diagonal(*(h.matrix for h in homs)), check=False)


def _stacked(f):
    return IntMatrix.vstack(f.matrix, f.target.relations, cols=f.target.n_gens)


def kernel_lattice(f):
    """Lattice in Z^n_gens(source) of vectors mapping to zero in the target."""
    null = left_nullspace(_stacked(f))
    n = f.source.n_gens
    vectors = [null.row(i)[:n] for i in range(null.rows)]
    return Lattice(n, vectors + f.source._relation_rows())


def kernel(f):
    """Returns (K, inclusion) with inclusion: K -> source."""
    lattice = kernel_lattice(f)
    basis = lattice.as_matrix()
    relations = []
    for i in range(f.source.relations.rows):
        coefficients = solve(basis, f.source.relations.row(i))
        if coefficients is None:
            raise IllDefinedHomError("a source relation does not lie in the kernel lattice")
        relations.append(coefficients)
    k = FgAbGroup(basis.rows, IntMatrix.from_rows(relations, basis.rows) if relations else None)
    return k, GroupHom(k, f.source, basis, check=False)


def cokernel(f):
    """Returns (C, projection) with projection: target -> C the identity on generators."""
    c = FgAbGroup(f.target.n_gens, IntMatrix.vstack(f.target.relations, f.matrix, cols=f.target.n_gens))
    return c, GroupHom(f.target, c, IntMatrix.identity(f.target.n_gens), check=False)


def image(f):
    """The image of f, presented on the source generators."""
    return FgAbGroup(f.source.n_gens, kernel_lattice(f).as_matrix())


def image_lattice(f):
    n = f.target.n_gens
    return Lattice(n, [f.matrix.row(i) for i in range(f.matrix.rows)] + f.target._relation_rows())


def is_injective(f):
    k, _ = kernel(f)
    return k.is_trivial()


def is_surjective(f):
    c, _ = cokernel(f)
    return c.is_trivial()


def is_iso(f):
    return is_injective(f) and is_surjective(f)


def lift(f, vector):
    """Returns x with f(x) equal to vector in the target, or None."""
    x = solve(_stacked(f), tuple(vector))
    return None if x is None else tuple(x[:f.source.n_gens])


def invert(f):
    """Inverse of an isomorphism, verified on generators."""
    if not is_iso(f):
        raise IllDefinedHomError("cannot invert a map that is not an isomorphism")
    rows = [lift(f, f.target.basis_vector(j)) for j in range(f.target.n_gens)]
    inverse = GroupHom(f.target, f.source, IntMatrix.from_rows(rows, f.source.n_gens)
                       if rows else IntMatrix.zeros(0, f.source.n_gens))
    if not f.then(inverse).equals(identity_hom(f.source)):
        raise IllDefinedHomError("computed inverse does not compose to the identity")
    return inverse


def factor_through(f, inclusion):
    """
    Returns g with g then inclusion equal to f, given that inclusion is
    injective and contains the image of f. Raises IllDefinedHomError otherwise.
    """
    rows = []
    for i in range(f.source.n_gens):
        x = lift(inclusion, f.matrix.row(i))
        if x is None:
            raise IllDefinedHomError(f"image of generator {i} is not in the subgroup")
        rows.append(x)
    matrix = IntMatrix.from_rows(rows, inclusion.source.n_gens) if rows else IntMatrix.zeros(0, inclusion.source.n_gens)
    return GroupHom(f.source, inclusion.source, matrix)


# --- Tensor Products ---

def tensor(g, h):
    """G ⊗ H on generators g_i ⊗ h_j, indexed i * n_gens(h) + j."""
    n_g, n_h = g.n_gens, h.n_gens
    rows = []
    for r in range(g.relations.rows):
        relation = g.relations.row(r)
        for j in range(n_h):
            row = [0] * (n_g * n_h)
            for i, c in enumerate(relation):
                row[i * n_h + j] = c
            rows.append(row)
    for r in range(h.relations.rows):
        relation = h.relations.row(r)
        for i in range(n_g):
            row = [0] * (n_g * n_h)
            for j, c in enumerate(relation):
                row[i * n_h + j] = c
            rows.append(row)
    return FgAbGroup(n_g * n_h, IntMatrix.from_rows(rows, n_g * n_h) if rows else None)


def tensor_element(u, v):
    """u ⊗ v as a vector on the pair generators."""
    return tuple(a * b for a in u for b in v)


def tensor_hom(f, g):
    return GroupHom(tensor(f.source, g.source), tensor(f.target, g.target), f.matrix.kron(g.matrix), check=False)


def bilinear_hom(g, h, target, pairing):
    """
    The hom G ⊗ H -> target induced by a bilinear pairing given on generator
    pairs; well-definedness on G ⊗ H checks bilinearity against the relations.
    """
    rows = [tuple(pairing(i, j)) for i in range(g.n_gens) for j in range(h.n_gens)]
    matrix = IntMatrix.from_rows(rows, target.n_gens) if rows else IntMatrix.zeros(0, target.n_gens)
    return GroupHom(tensor(g, h), target, matrix)


# --- Exactness ---

@dataclass(frozen=True)
class JointCertificate:
    index: int
    image_in_kernel: bool
    kernel_in_image: bool

    @property
    def exact(self):
        return self.image_in_kernel and self.kernel_in_image


@dataclass(frozen=True)
class ExactnessCertificate:
    joints: tuple

    @property
    def exact(self):
        return all(joint.exact for joint in self.joints)

    def __bool__(self):
        return self.exact

    def first_failure(self):
        return next((joint for joint in self.joints if not joint.exact), None)


def is_exact(seq):
    """
    Exactness of f_0, f_1, ... at every joint, comparing image(f_i) and
    kernel(f_{i+1}) as lattices in the middle group's generator space (both
    containing its relations).
    """
    joints = []
    for i in range(len(seq) - 1):
        f, g = seq[i], seq[i + 1]
        if not f.target.same_presentation(g.source):
            raise NonComposableError(f"map {i} does not land in the source of map {i + 1}")
        image_l = image_lattice(f)
        kernel_l = kernel_lattice(g)
        joints.append(JointCertificate(i, image_l.issubset(kernel_l), kernel_l.issubset(image_l)))
    certificate = ExactnessCertificate(tuple(joints))
    if not certificate.exact:
        logger.debug("sequence fails exactness at joint %s", certificate.first_failure().index)
    return certificate
