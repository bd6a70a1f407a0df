"""One test per acceptance criterion; each prints a single PASS/FAIL line."""

from contextlib import contextmanager
from functools import lru_cache

import pytest

from conftest import CRITERION_LINES
from groups import biquadratic_datum, c4, s3, v4
from hopfgalois.action import (
    annihilator,
    canonical_map,
    coaction_side,
    fixed_space,
    four_fold_invariants,
    group_action_datum,
    is_subfield,
    lattice_ops,
    phi_prime,
    relative_galois_check,
    subextension_flags,
    trivial_action,
)
from hopfgalois.errors import PreconditionError
from hopfgalois.finite_fields import frobenius_powers, gf_algebra
from hopfgalois.fixtures import builtin_fixture
from hopfgalois.greither_pareigis import (
    classical_matches_group_algebra,
    classical_structure,
    descend_hopf_and_action,
    enumerate_structures,
    group_side_correspondence,
    left_ideal_coideal_oracle,
)
from hopfgalois.hopf import (
    FinAlgebra,
    HopfAlgebraData,
    classify_subspace,
    dualize_hopf,
    group_algebra,
    group_elements_span,
    newman_schneider,
    verify_axioms,
)
from hopfgalois.linalg import GF, QQ, Matrix, Subspace, all_subspaces
from hopfgalois.perm import all_subgroups, cyclic_group, hg_candidates_oracle
from hopfgalois.towers import (
    classical_n_tower,
    compatible_ideal_towers,
    compatible_subgroup_towers,
    tower_correspondence,
    tower_from_datum,
    tower_hg_check,
)

GF_CASES = ["gf-2-2", "gf-2-3", "gf-2-4", "gf-3-3", "gf-2-6"]
Q_CASES = ["q-x3m2-closure", "q-cbrt2"]


@contextmanager
def criterion(n, title):
    try:
        yield
    except BaseException:
        _record(f"criterion {n} ({title}): FAIL")
        raise
    _record(f"criterion {n} ({title}): PASS")


def _record(line):
    print("\n" + line)
    CRITERION_LINES.append(line)


@lru_cache(maxsize=None)
def datum(name):
    return builtin_fixture(name).payload


@lru_cache(maxsize=None)
def structures(name):
    return enumerate_structures(datum(name))


def fixed_by_group(d, u):
    """``L^U`` straight from the automorphism matrices, in ``L`` coordinates."""
    n = d.ltilde.dim
    ident = Matrix.identity(d.field, n)
    rows = [r for a in u.elements for r in (d.mat_of[a] - ident).rows if any(r)]
    big = Matrix(d.field, rows, n).kernel() if rows else Subspace.full(d.field, n)
    return Subspace.span(d.field, d.l_sub.dim, [d.to_l(x) for x in big.intersect(d.l_sub).basis])


def corrupted(h, part):
    f, d = h.field, h.dim
    if part == "mul":
        rows = [list(r) for r in h.mul.rows]
        rows[0][1], rows[1][1] = rows[1][1], rows[0][1]
        return HopfAlgebraData(FinAlgebra(f, Matrix(f, rows, d * d), h.unit, check=False), h.coalgebra, h.antipode, check=False)
    return HopfAlgebraData(h.algebra, h.coalgebra, h.antipode.scale(0), check=False)


def test_criterion_01_hopf_axioms():
    with criterion(1, "Hopf axioms"):
        hs = []
        for fld in (QQ, GF(5)):
            for g in (c4(), s3(), v4()):
                h = group_algebra(g, fld)
                hs += [h, dualize_hopf(h)]
        hs += [s.hopf for name in GF_CASES + Q_CASES for s in structures(name)]
        for h in hs:
            rep = verify_axioms(h)
            assert rep.algebra and rep.coalgebra and rep.bialgebra and rep.antipode and not rep.failures
        for part in ("mul", "antipode"):
            rep = verify_axioms(corrupted(group_algebra(s3(), QQ), part))
            assert not rep.hopf and rep.failures and rep.failures[0][0]


def test_criterion_02_newman_schneider_round_trips():
    with criterion(2, "Newman-Schneider round trips"):
        for fld in (QQ, GF(5)):
            for g in (c4(), s3(), v4()):
                h = group_algebra(g, fld)
                for a in all_subgroups(g):
                    sub = group_elements_span(g, a, fld)
                    ideal = newman_schneider(h, sub, "psi")
                    assert newman_schneider(h, ideal, "phi") == sub
                    assert newman_schneider(h, newman_schneider(h, ideal, "phi"), "psi") == ideal
                    assert classify_subspace(h, ideal).hopf_ideal == a.is_normal_in(g)


def test_criterion_03_census_counts():
    with criterion(3, "Greither-Pareigis census"):
        cases = [(datum("gf-2-3"), 1), (datum("q-cbrt2"), 1), (datum("gf-2-4"), 2), (biquadratic_datum(), 4)]
        assert [(d.group.order, d.g_prime.order) for d, _ in cases] == [(3, 1), (6, 2), (4, 1), (4, 1)]
        for d, count in cases:
            pipeline = enumerate_structures(d)
            oracle = hg_candidates_oracle(d.group, d.g_prime)
            assert len(pipeline) == len(oracle) == count
            assert {s.n_grp.canonical_gens for s in pipeline} == {n.canonical_gens for n in oracle}


def test_criterion_04_canonical_map():
    with criterion(4, "canonical map"):
        for name in GF_CASES + Q_CASES:
            for s in structures(name):
                rep = canonical_map(s.module)
                assert rep.bijective and rep.rank == s.module.dl ** 2
        for name in GF_CASES + ["q-x3m2-closure"]:
            assert classical_matches_group_algebra(datum(name), classical_structure(datum(name)))


def test_criterion_05_finite_correspondence():
    with criterion(5, "finite correspondence"):
        for name in GF_CASES + Q_CASES:
            d = datum(name)
            for s in structures(name):
                rows = group_side_correspondence(s, d)
                assert len({r.ideal for r in rows}) == len({r.field for r in rows}) == len(rows)
                for r in rows:
                    info = subextension_flags(s.module, r.field)
                    assert info.h_subextension and info.j == r.ideal
                    assert fixed_space(s.module, r.ideal) == r.field
                    assert phi_prime(s.module, r.field) == r.hopf_subalgebra
                    assert r.field == fixed_by_group(d, r.u)
                    assert r.normal == r.hopf_ideal == info.h_normal
                for a in rows:
                    for b in rows:
                        assert a.ideal.contains(b.ideal) == b.field.contains(a.field)


def test_criterion_06_correspondence_defect():
    with criterion(6, "correspondence defect"):
        d = datum("q-x3m2-closure")
        classical = group_side_correspondence(classical_structure(d), d)
        lam = descend_hopf_and_action(d, d.cosets.lambda_img)
        rows = group_side_correspondence(lam, d)
        assert len(classical) == 6 and len(rows) == 3
        span = lambda *vs: Subspace.span(QQ, 6, vs)
        e = lambda i: tuple(int(k == i) for k in range(6))
        quadratic = span(e(0), e(1))
        assert [r.field for r in rows] == [span(e(0)), quadratic, Subspace.full(QQ, 6)]
        # basis 1, w, c, cw, c^2, c^2 w; the three cubic fields Q(w^a c)
        cubics = [span(e(0), e(2), e(4)), span(e(0), e(3), (0, 0, 0, 0, -1, -1)), span(e(0), (0, 0, -1, -1, 0, 0), e(5))]
        for f in cubics:
            assert is_subfield(lam.module.algebra, f) and f.dim == 3
            assert not subextension_flags(lam.module, f).h_subextension
            assert subextension_flags(classical_structure(d).module, f).h_subextension
        cb = datum("q-cbrt2")
        (s,) = structures("q-cbrt2")
        assert all(subextension_flags(s.module, f).h_subextension for f in (Subspace.span(QQ, 3, [s.module.algebra.unit]), Subspace.full(QQ, 3)))
        for v in ((0, 1, 0), (0, 0, 1), (1, 1, 1)):
            with pytest.raises(PreconditionError):
                subextension_flags(s.module, Subspace.span(QQ, 3, [s.module.algebra.unit, v]))
        assert cb.g_prime.order == 2


def test_criterion_07_gf2_subspace_oracle():
    with criterion(7, "GF(2) subspace oracle"):
        checked = 0
        for name in GF_CASES:
            d = datum(name)
            for s in structures(name):
                if d.field.char == 2 and s.hopf.dim <= 4:
                    assert set(left_ideal_coideal_oracle(s.hopf)) == {r.ideal for r in group_side_correspondence(s, d)}
                    checked += 1
        assert checked == 4


def classical_gf(p, n):
    alg, _ = gf_algebra(p, n)
    g = cyclic_group(n)
    powers = frobenius_powers(alg)
    return group_action_datum(group_algebra(g, GF(p)), alg, [powers[a[0]] for a in g.elements])


def subextensions(d):
    return [subextension_flags(d, f) for f in all_subspaces(GF(2), d.dl) if is_subfield(d.algebra, f)]


def test_criterion_08_lattice_operations():
    with criterion(8, "lattice operations"):
        d = classical_gf(2, 6)
        subs = [f for f in subextensions(d) if f.h_subextension]
        assert sorted(f.dim for f in subs) == [1, 2, 3, 6]
        for a in subs:
            for b in subs:
                out = lattice_ops(d, a, b)
                h1, h2 = phi_prime(d, a.space), phi_prime(d, b.space)
                assert out["compositum"].space == fixed_space(d, h1.intersect(h2))
                assert out["intersection"].space == fixed_space(d, a.j + b.j)
                assert out["intersection"].space == a.space.intersect(b.space)
        d16 = classical_gf(2, 4)
        subs16 = subextensions(d16)
        assert sorted(f.dim for f in subs16) == [1, 2, 4]
        assert all(f.h_subextension and relative_galois_check(d16, f) for f in subs16)


def test_criterion_09_coaction_duality():
    with criterion(9, "coaction duality"):
        for name in GF_CASES + Q_CASES:
            d = datum(name)
            for s in structures(name):
                rows = group_side_correspondence(s, d)
                side = coaction_side(s.module, [r.ideal for r in rows])
                assert side.can_bijective and side.can_star_bijective
                for r in rows:
                    assert four_fold_invariants(s.module, r.ideal, side.coaction) == r.field
            t = trivial_action(structures(name)[0].hopf, structures(name)[0].module.algebra)
            side = coaction_side(t)
            assert not side.can_bijective and not side.can_star_bijective


def test_criterion_10_tower_suite():
    with criterion(10, "tower suite"):
        td = builtin_fixture("gf2-tower-3").payload
        assert [lv.ltilde.dim for lv in td.levels] == [2, 4, 8]
        gt, ht, mt = tower_from_datum(td)
        hg = tower_hg_check(ht, mt)
        assert hg.ok and all(lv["bijective"] for lv in hg.levels)
        et = classical_n_tower(td)
        rep = tower_correspondence(td, ht, mt, et)
        assert rep.ok
        # every compatible chain of subgroups, by brute force over all subgroup triples
        subs = [all_subgroups(g) for g in et.groups.groups]
        brute = [
            (a, b, c)
            for a in subs[0]
            for b in subs[1]
            for c in subs[2]
            if et.groups.image(2, 1, c).elements == b.elements and et.groups.image(1, 0, b).elements == a.elements
        ]
        chains = compatible_subgroup_towers(et)
        assert len(brute) == len(chains) == rep.extra["count"] == 4
        per_level = [list(dict.fromkeys(r.ideals.spaces[k] for r in rep.rows)) for k in range(3)]
        ideal_chains = compatible_ideal_towers(ht, per_level)
        assert {tuple(c) for c in ideal_chains} == {tuple(r.ideals.spaces) for r in rep.rows}
        assert len(ideal_chains) == len(rep.rows)
        for r in rep.rows:
            # within the truncation a finite subextension shows as equal top dimensions
            dims = [f.dim for f in r.fields]
            finite = dims[-2] == dims[-1]
            assert r.ideals.is_open_model == finite == r.field_stabilizes
            top = annihilator(mt.top, r.fields[-1])
            for k in range(3):
                assert annihilator(mt.levels[k], r.fields[k]) == r.ideals.spaces[k]
                assert top.image(ht.projection(2, k)) == r.ideals.spaces[k]
