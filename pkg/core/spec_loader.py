"""
Reads ring, monoid and ring-map spec files. A spec file is a JSON object with
a "kind" of "ring", "monoid" or "hom"; docs/spec_file_format.md has the full
grammar. Every structural problem is reported as a SpecFormatError naming the
offending key, and every algebraic one by the constructor that detects it.
"""
import json
import logging
import os

from core import fgab
from core.errors import SpecFormatError
from core.fgab import GroupHom, IntMatrix
from core.involutive_algebra import AffineMonoid, InvolutiveRing, RingHom

logger = logging.getLogger(__name__)

KINDS = ("ring", "monoid", "hom")


def read_spec(path):
    """The parsed JSON object of a spec file."""
    if not os.path.isfile(path):
        raise SpecFormatError(f"spec file {path} does not exist")
    with open(path, encoding="utf-8") as handle:
        try:
            spec = json.load(handle)
        except json.JSONDecodeError as e:
            raise SpecFormatError(f"{path} is not valid JSON: {e}")
    if not isinstance(spec, dict):
        raise SpecFormatError(f"{path}: top level must be an object")
    if spec.get("kind") not in KINDS:
        raise SpecFormatError(f"{path}: 'kind' must be one of {', '.join(KINDS)}, got {spec.get('kind')!r}")
    return spec


def _require(spec, key, where):
    if key not in spec:
        raise SpecFormatError(f"{where}: missing '{key}'")
    return spec[key]


def _int_list(value, length, where):
    if not isinstance(value, list) or len(value) != length or not all(isinstance(x, int) for x in value):
        raise SpecFormatError(f"{where}: expected a list of {length} integers, got {value!r}")
    return tuple(value)


def _int_matrix(value, rows, cols, where):
    if not isinstance(value, list) or len(value) != rows:
        raise SpecFormatError(f"{where}: expected {rows} rows, got {value!r}")
    return IntMatrix.from_rows([_int_list(row, cols, f"{where} row {i}") for i, row in enumerate(value)], cols)


# --- Rings ---

def ring_from_spec(spec, where="ring spec"):
    """
    :param spec: a parsed ring spec
    :type spec: dict
    :returns: the validated ring
    :rtype: InvolutiveRing
    :raises SpecFormatError: on a malformed spec
    :raises RingAxiomError: when the table or involution violates an axiom
    """
    names = _require(spec, "generators", where)
    if not isinstance(names, list) or not names or not all(isinstance(x, str) for x in names):
        raise SpecFormatError(f"{where}: 'generators' must be a nonempty list of names")
    if len(set(names)) != len(names):
        raise SpecFormatError(f"{where}: generator names must be distinct")
    n = len(names)
    orders = _int_list(_require(spec, "orders", where), n, f"{where} 'orders'")
    if any(order < 0 for order in orders):
        raise SpecFormatError(f"{where}: orders must be nonnegative (0 for infinite)")
    additive = fgab.group(n, [[order * int(i == k) for k in range(n)] for i, order in enumerate(orders) if order])
    index = {name: i for i, name in enumerate(names)}
    table = [[None] * n for _ in range(n)]
    entries = _require(spec, "table", where)
    if not isinstance(entries, list):
        raise SpecFormatError(f"{where}: 'table' must be a list of [left, right, product] triples")
    given = set()
    for k, entry in enumerate(entries):
        if not isinstance(entry, list) or len(entry) != 3:
            raise SpecFormatError(f"{where}: table entry {k} must be [left, right, product]")
        left, right, value = entry
        if left not in index or right not in index:
            raise SpecFormatError(f"{where}: table entry {k} names an unknown generator ({left!r}, {right!r})")
        vector = _int_list(value, n, f"{where} table entry {k}")
        i, j = index[left], index[right]
        if (i, j) in given:
            raise SpecFormatError(f"{where}: product {left}*{right} is given twice")
        given.add((i, j))
        table[i][j] = vector
        # an unlisted mirror product defaults to this one
        if (j, i) not in given:
            table[j][i] = vector
    for i in range(n):
        for j in range(n):
            if table[i][j] is None:
                raise SpecFormatError(f"{where}: table has no entry for {names[i]}*{names[j]}")
    one = _int_list(_require(spec, "unit", where), n, f"{where} 'unit'")
    involution = None
    if "involution" in spec:
        matrix = _int_matrix(spec["involution"], n, n, f"{where} 'involution'")
        involution = GroupHom(additive, additive, matrix)
    ring = InvolutiveRing(spec.get("name", "A"), additive, names, table, one, involution)
    logger.debug("loaded ring %s with additive group %r", ring.name, additive)
    return ring


# --- Monoids ---

def monoid_from_spec(spec, where="monoid spec"):
    """
    :raises SpecFormatError: on a malformed spec
    :raises MonoidError: when the involution does not preserve the monoid
    """
    body = _require(spec, "monoid", where)
    if not isinstance(body, dict):
        raise SpecFormatError(f"{where}: 'monoid' must be an object")
    rank = _require(spec, "rank", where)
    if not isinstance(rank, int) or rank < 1:
        raise SpecFormatError(f"{where}: 'rank' must be a positive integer")
    generators = [_int_list(g, rank, f"{where} generator {k}") for k, g in enumerate(_require(body, "generators", where))]
    involution = None
    if "involution" in body:
        involution = _int_matrix(body["involution"], rank, rank, f"{where} 'monoid.involution'")
    inequalities = None
    if "inequalities" in body:
        inequalities = [_int_list(l, rank, f"{where} inequality {k}") for k, l in enumerate(body["inequalities"])]
    return AffineMonoid(spec.get("name", "M"), rank, generators, involution, inequalities)


# --- Ring Maps ---

def hom_from_spec(spec, base_dir, where="hom spec"):
    """
    A ring map between two ring spec files named relative to base_dir.

    :raises NotARingHomError: when the matrix is not additive, unital,
        multiplicative and equivariant
    """
    source = load_ring(os.path.join(base_dir, _require(spec, "source", where)))
    target = load_ring(os.path.join(base_dir, _require(spec, "target", where)))
    matrix = _int_matrix(_require(spec, "matrix", where), source.n_gens, target.n_gens, f"{where} 'matrix'")
    return RingHom(source, target, matrix)


def load_ring(path):
    spec = read_spec(path)
    if spec["kind"] != "ring":
        raise SpecFormatError(f"{path} is a {spec['kind']} spec, expected a ring")
    return ring_from_spec(spec, path)


def load_monoid(path):
    spec = read_spec(path)
    if spec["kind"] != "monoid":
        raise SpecFormatError(f"{path} is a {spec['kind']} spec, expected a monoid")
    return monoid_from_spec(spec, path)


def load_hom(path):
    spec = read_spec(path)
    if spec["kind"] != "hom":
        raise SpecFormatError(f"{path} is a {spec['kind']} spec, expected a ring map")
    return hom_from_spec(spec, os.path.dirname(os.path.abspath(path)), path)
