import json

import pytest

from core import fgab
from core.errors import MonoidError, NotARingHomError, RingAxiomError, SpecFormatError
from core.spec_loader import load_hom, load_monoid, load_ring, read_spec, ring_from_spec

RINGS = ["z.json", "zi.json", "f2.json", "f4.json", "f2t.json", "z4.json"]
MONOIDS = ["nat.json", "negnat.json", "int.json", "int_sigma.json", "nat2_swap.json"]


def write(tmp_path, name, document):
    path = tmp_path / name
    path.write_text(document if isinstance(document, str) else json.dumps(document), encoding="utf-8")
    return str(path)


@pytest.mark.parametrize("name", RINGS)
def test_bundled_rings_load(spec_path, name):
    assert load_ring(spec_path(name)).n_gens >= 1


@pytest.mark.parametrize("name", MONOIDS)
def test_bundled_monoids_load(spec_path, name):
    assert load_monoid(spec_path(name)).rank >= 1


def test_bundled_ring_maps_load(spec_path):
    assert load_hom(spec_path("f2_to_f4.json")).target.additive == fgab.group(2, [[2, 0], [0, 2]])
    assert load_hom(spec_path("z_to_z.json")).source.name == "Z"


def test_missing_product_is_a_format_error(spec_path):
    with pytest.raises(SpecFormatError, match=r"x\*x"):
        load_ring(spec_path("bad_table.json"))


def test_unit_map_into_z_is_not_a_ring_map(spec_path):
    with pytest.raises(NotARingHomError):
        load_hom(spec_path("f2_to_z.json"))


def test_missing_file(tmp_path):
    with pytest.raises(SpecFormatError, match="does not exist"):
        read_spec(str(tmp_path / "absent.json"))


def test_invalid_json(tmp_path):
    with pytest.raises(SpecFormatError, match="not valid JSON"):
        read_spec(write(tmp_path, "broken.json", "{\"kind\": "))


def test_unknown_kind(tmp_path):
    with pytest.raises(SpecFormatError, match="kind"):
        read_spec(write(tmp_path, "odd.json", {"kind": "field"}))


def test_wrong_kind_for_the_loader(spec_path):
    with pytest.raises(SpecFormatError, match="expected a ring"):
        load_ring(spec_path("nat.json"))


def test_duplicate_product_is_rejected():
    spec = {"kind": "ring", "generators": ["1"], "orders": [0],
            "table": [["1", "1", [1]], ["1", "1", [1]]], "unit": [1]}
    with pytest.raises(SpecFormatError, match="twice"):
        ring_from_spec(spec)


def test_missing_key_is_named():
    with pytest.raises(SpecFormatError, match="'unit'"):
        ring_from_spec({"kind": "ring", "generators": ["1"], "orders": [0], "table": [["1", "1", [1]]]})


def test_algebraic_failures_come_from_the_ring(tmp_path):
    spec = {"kind": "ring", "generators": ["1"], "orders": [0], "table": [["1", "1", [1]]], "unit": [2]}
    with pytest.raises(RingAxiomError):
        load_ring(write(tmp_path, "two.json", spec))


def test_monoid_involution_must_preserve_the_monoid(tmp_path):
    spec = {"kind": "monoid", "rank": 1,
            "monoid": {"generators": [[1]], "involution": [[-1]], "inequalities": [[1]]}}
    with pytest.raises(MonoidError):
        load_monoid(write(tmp_path, "flip.json", spec))
