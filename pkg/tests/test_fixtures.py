import copy
import json

import pytest

from hopfgalois.action import group_action_datum
from hopfgalois.errors import InputError, InvariantViolation
from hopfgalois.finite_fields import frobenius_powers, gf_algebra, is_ring_map
from hopfgalois.fixtures import (
    builtin_fixture,
    builtin_names,
    builtin_raw,
    dump_fixture,
    emit_module,
    gen_gf_splitting_datum,
    gen_gf_tower,
    load_fixture,
    make_header,
    parse_fixture,
)
from hopfgalois.greither_pareigis import validate_splitting
from hopfgalois.hopf import group_algebra
from hopfgalois.linalg import GF
from hopfgalois.perm import cyclic_group

ROUND_TRIP = ["q-x3m2-closure", "q-cbrt2", "gf-2-4", "gf-3-2", "gf2-tower-2"]


@pytest.mark.parametrize("name", ROUND_TRIP)
def test_parse_emit_round_trip(name):
    raw = builtin_raw(name)
    fx = parse_fixture(raw)
    again = fx.to_json()
    assert again == raw
    assert parse_fixture(json.loads(dump_fixture(again))).to_json() == raw


def test_module_algebra_round_trip(tmp_path):
    alg, _ = gf_algebra(2, 3)
    g = cyclic_group(3)
    mats = frobenius_powers(alg)
    d = group_action_datum(group_algebra(g, GF(2)), alg, [mats[a[0]] for a in g.elements])
    raw = {"header": make_header(GF(2)), "module_algebra": emit_module(d)}
    path = tmp_path / "m.json"
    path.write_text(dump_fixture(raw))
    fx = load_fixture(path)
    assert fx.kind == "module_algebra" and fx.payload.act == d.act
    assert fx.to_json() == raw


def test_gf_generator_uses_least_irreducible():
    raw = gen_gf_splitting_datum(2, 2)
    assert "x^2 + x + 1" in raw["metadata"]["description"]
    assert raw["splitting_datum"]["closure_algebra"]["unit"] == ["1", "0"]
    trivial = parse_fixture(gen_gf_splitting_datum(2, 1)).payload
    assert trivial.group.order == 1 and trivial.ltilde.dim == 1


def test_gf_tower_generator_embeds_levels():
    td = parse_fixture(gen_gf_tower(3, [2, 4])).payload
    td.validate()
    emb, gmap = td.maps[0]
    assert is_ring_map(td.levels[0].ltilde, td.levels[1].ltilde, emb)
    assert gmap == [0, 1, 0, 1]
    with pytest.raises(InputError):
        gen_gf_tower(2, [2, 3])


def test_corrupted_automorphism_is_rejected():
    raw = copy.deepcopy(builtin_raw("gf-2-3"))
    mat = raw["splitting_datum"]["automorphisms"][1]["matrix"]
    mat[0] = ["0"] * len(mat[0])
    with pytest.raises(InvariantViolation):
        fx = parse_fixture(raw)
        validate_splitting(fx.payload)


@pytest.mark.parametrize(
    "mutate",
    [
        lambda r: r.pop("header"),
        lambda r: r["header"].update(format_version=9),
        lambda r: r["header"].update(field="GF(4)"),
        lambda r: r["header"].update(tensor_index_convention="other"),
        lambda r: r.update(extra={}),
        lambda r: r.update(tower={}),
        lambda r: r["splitting_datum"]["closure_algebra"].update(unit=["1"]),
        lambda r: r["splitting_datum"]["closure_algebra"].update(unit=["1", "x", "0"]),
    ],
)
def test_malformed_fixtures_are_input_errors(mutate):
    raw = copy.deepcopy(builtin_raw("gf-2-3"))
    mutate(raw)
    with pytest.raises(InputError):
        parse_fixture(raw)


def test_load_errors(tmp_path):
    with pytest.raises(InputError):
        load_fixture(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(InputError):
        load_fixture(bad)
    with pytest.raises(InputError):
        builtin_fixture("no-such-fixture")
    assert load_fixture("builtin:q-cbrt2").kind == "splitting_datum"
    assert "q-cbrt2" in builtin_names()


def test_dump_is_stable():
    raw = builtin_raw("gf-2-2")
    assert dump_fixture(raw) == dump_fixture(json.loads(dump_fixture(raw)))
