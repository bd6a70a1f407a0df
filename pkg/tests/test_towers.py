import pytest

from hopfgalois.action import canonical_matrix, subextension_flags
from hopfgalois.errors import InvariantViolation, PreconditionError
from hopfgalois.fixtures import builtin_fixture, gen_gf_tower, parse_fixture
from hopfgalois.linalg import GF, Matrix, Subspace
from hopfgalois.perm import all_subgroups, cyclic_group
from hopfgalois.towers import (
    HopfTower,
    TowerDatum,
    _can_relative,
    classical_n_tower,
    completed_group_algebra,
    constant_tower,
    cyclic_2adic_tower,
    restricted_dual_check,
    subextension_tower,
    tower_correspondence,
    tower_from_datum,
    tower_hg_check,
    trivial_module_tower,
    validate_hopf_tower,
)


@pytest.fixture(scope="module")
def gf2_tower():
    td = builtin_fixture("gf2-tower-3").payload
    gt, ht, mt = tower_from_datum(td)
    return td, gt, ht, mt


def test_datum_levels(gf2_tower):
    td, gt, ht, mt = gf2_tower
    assert [lv.ltilde.dim for lv in td.levels] == [2, 4, 8]
    assert [h.dim for h in ht.levels] == [2, 4, 8]
    assert validate_hopf_tower(ht).ok


def test_projection_composes_level_maps(gf2_tower):
    _, gt, ht, _ = gf2_tower
    for a in gt.groups[2].elements:
        assert gt.project(2, 0, a) == gt.maps[0][gt.maps[1][a]]
    assert ht.projection(2, 0) == ht.maps[0] @ ht.maps[1]
    assert ht.projection(1, 1) == Matrix.identity(GF(2), 4)
    assert [ht.kernel(2, k).dim for k in range(3)] == [6, 4, 0]


def test_depth_one_is_the_finite_canonical_map(gf2_tower):
    td, *_ = gf2_tower
    one = td.truncate(1)
    _, ht, mt = tower_from_datum(one)
    assert _can_relative(mt, ht, 0) == canonical_matrix(mt.top)
    with pytest.raises(PreconditionError):
        td.truncate(4)


def test_tower_is_hopf_galois_to_full_depth(gf2_tower):
    _, _, ht, mt = gf2_tower
    rep = tower_hg_check(ht, mt)
    assert rep.ok and rep.extra["hopf_galois_to_depth"] == 3
    assert all(lv["bijective"] and lv["fixed_field_matches"] for lv in rep.levels)


def test_trivial_action_tower_is_not_galois(gf2_tower):
    _, _, ht, mt = gf2_tower
    triv = trivial_module_tower(ht, mt)
    rep = tower_hg_check(ht, triv)
    assert not rep.ok and rep.extra["hopf_galois_to_depth"] == 0
    dual = restricted_dual_check(ht, triv)
    # can and can-dagger still agree, both failing
    assert dual.ok and not dual.extra["both_bijective"]


def test_restricted_dual(gf2_tower):
    _, _, ht, mt = gf2_tower
    rep = restricted_dual_check(ht, mt)
    assert rep.ok and rep.extra["both_bijective"]


def test_correspondence_counts_match_subgroups_of_top_group(gf2_tower):
    td, gt, ht, mt = gf2_tower
    rep = tower_correspondence(td, ht, mt, classical_n_tower(td))
    # a chain in a cyclic 2-power tower is fixed by its top subgroup
    assert rep.extra["count"] == len(all_subgroups(cyclic_group(8))) == 4
    assert rep.extra["open_model"] == 3 and rep.extra["closed_model"] == 1
    closed = [t for t in rep.extra["towers"] if t["model"] == "closed"]
    assert closed[0]["field_dims"] == [2, 4, 8] and closed[0]["V_orders"] == [1, 1, 1]
    for t in rep.extra["towers"]:
        if t["model"] == "open":
            j = t["open_level"]
            assert len(set(t["field_dims"][j:])) == 1


def test_subextension_tower_flags(gf2_tower):
    _, _, _, mt = gf2_tower
    bases = [Subspace.span(GF(2), m.dl, [m.algebra.unit]) for m in mt.levels]
    assert subextension_tower(mt, bases) == [True, True, True]
    assert subextension_flags(mt.top, bases[-1]).j.dim == 7


def test_cyclic_2adic_group_tower():
    gt = cyclic_2adic_tower(4)
    gt.validate()
    assert [g.order for g in gt.groups] == [2, 4, 8, 16]
    ht = completed_group_algebra(gt, GF(3))
    assert [ht.kernel(k + 1, k).dim for k in range(3)] == [2, 4, 8]


def test_constant_tower_has_trivial_kernels():
    ht = completed_group_algebra(constant_tower(cyclic_group(3), 3), GF(2))
    assert all(ht.kernel(2, k).dim == 0 for k in range(3))


def test_non_surjective_map_is_reported(gf2_tower):
    _, _, ht, _ = gf2_tower
    rows = [list(r) for r in ht.maps[1].rows]
    rows[0] = [0] * len(rows[0])
    bad = HopfTower(list(ht.levels), [ht.maps[0], Matrix(GF(2), rows, ht.maps[1].ncols)])
    rep = validate_hopf_tower(bad)
    assert not rep.ok and "surjective" in {f["check"] for f in rep.failures}


def test_wrong_group_map_is_rejected():
    raw = gen_gf_tower(2, [2, 4])
    gm = raw["tower"]["maps"][0]["group_map"]
    keys = sorted(gm)
    gm[keys[1]], gm[keys[0]] = gm[keys[0]], gm[keys[1]]
    with pytest.raises(InvariantViolation):
        td = parse_fixture(raw).payload
        td.validate()


def test_towers_need_galois_levels():
    lv = builtin_fixture("q-cbrt2").payload
    with pytest.raises(PreconditionError):
        TowerDatum([lv], []).validate()
