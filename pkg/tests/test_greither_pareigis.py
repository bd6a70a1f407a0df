import pytest

from groups import biquadratic_datum
from hopfgalois.action import canonical_map, subextension_flags
from hopfgalois.errors import InvariantViolation, PreconditionError
from hopfgalois.fixtures import builtin_fixture
from hopfgalois.greither_pareigis import (
    SplittingDatum,
    classical_matches_group_algebra,
    classical_structure,
    descend_hopf_and_action,
    enumerate_structures,
    group_side_correspondence,
    left_ideal_coideal_oracle,
    validate_splitting,
    verify_structure,
)
from hopfgalois.hopf import verify_axioms
from hopfgalois.linalg import QQ, Subspace
from hopfgalois.perm import hg_candidates_oracle

FIXTURES = ["gf-2-2", "gf-2-3", "gf-2-4", "gf-3-3", "gf-2-6", "q-x3m2-closure", "q-cbrt2"]


def datum(name):
    return builtin_fixture(name).payload


def closure_span(*idx):
    # basis 1, w, c, cw, c^2, c^2 w of the closure of Q(cbrt 2)
    return Subspace.span(QQ, 6, [tuple(int(k == i) for k in range(6)) for i in idx])


@pytest.mark.parametrize("name", FIXTURES)
def test_fixtures_are_valid_splitting_data(name):
    d = datum(name)
    rep = validate_splitting(d)
    assert rep.ok and rep.dim_l == rep.index


def test_corrupted_group_table_is_rejected():
    d = datum("gf-2-3")
    table = [row[:] for row in d.table]
    table[1][1], table[1][2] = table[1][2], table[1][1]
    with pytest.raises(InvariantViolation):
        validate_splitting(SplittingDatum(d.ltilde, d.labels, d.matrices, table, d.g_prime_idx))


def test_non_automorphism_is_rejected():
    d = datum("gf-2-3")
    mats = list(d.matrices)
    mats[1] = mats[1].scale(0)
    bad = SplittingDatum(d.ltilde, d.labels, mats, d.table, d.g_prime_idx)
    rep = validate_splitting(bad, raise_on_failure=False)
    assert not rep.ok and rep.failures[0][0] == "automorphism"


@pytest.mark.parametrize(
    "make,count",
    [(lambda: datum("gf-2-3"), 1), (lambda: datum("q-cbrt2"), 1), (lambda: datum("gf-2-4"), 2), (biquadratic_datum, 4)],
)
def test_census_agrees_with_subgroup_oracle(make, count):
    d = make()
    structures = enumerate_structures(d)
    oracle = hg_candidates_oracle(d.group, d.g_prime)
    assert len(structures) == len(oracle) == count
    assert {s.n_grp.canonical_gens for s in structures} == {n.canonical_gens for n in oracle}


@pytest.mark.parametrize("name", FIXTURES)
def test_every_structure_is_hopf_galois(name):
    d = datum(name)
    for s in enumerate_structures(d):
        assert verify_axioms(s.hopf).hopf
        assert s.hopf.dim == d.l_sub.dim
        assert canonical_map(s.module).bijective
        assert verify_structure(d, s)


@pytest.mark.parametrize("make", [lambda: datum("gf-2-4"), lambda: datum("q-x3m2-closure"), biquadratic_datum])
def test_classical_structure_is_the_group_algebra(make):
    d = make()
    assert classical_matches_group_algebra(d, classical_structure(d))


def test_translation_structure_differs_from_group_algebra_when_non_abelian():
    d = datum("q-x3m2-closure")
    lam = descend_hopf_and_action(d, d.cosets.lambda_img)
    assert not classical_matches_group_algebra(d, lam)
    assert classical_structure(d).n_grp != lam.n_grp


def test_classical_needs_trivial_g_prime():
    with pytest.raises(PreconditionError):
        classical_structure(datum("q-cbrt2"))


def test_correspondence_defect_on_the_closure():
    d = datum("q-x3m2-closure")
    classical = group_side_correspondence(classical_structure(d), d)
    lam = descend_hopf_and_action(d, d.cosets.lambda_img)
    rows = group_side_correspondence(lam, d)
    # every subgroup of S3 versus only its normal subgroups
    assert len(classical) == 6
    assert [r.field.dim for r in rows] == [1, 2, 6]
    assert rows[1].field == closure_span(0, 1)
    assert not subextension_flags(lam.module, closure_span(0, 2, 4)).h_subextension
    assert subextension_flags(lam.module, closure_span(0, 1)).h_subextension
    with pytest.raises(PreconditionError):
        subextension_flags(lam.module, closure_span(0, 2))


def test_degree_three_subfield_has_only_trivial_intermediates():
    d = datum("q-cbrt2")
    (s,) = enumerate_structures(d)
    rows = group_side_correspondence(s, d)
    assert [r.field.dim for r in rows] == [1, 3]
    assert all(subextension_flags(s.module, r.field).h_subextension for r in rows)


@pytest.mark.parametrize("name", ["gf-2-2", "gf-2-3", "gf-2-4"])
def test_group_side_is_exhaustive_over_gf2(name):
    d = datum(name)
    for s in enumerate_structures(d):
        brute = set(left_ideal_coideal_oracle(s.hopf))
        assert brute == {r.ideal for r in group_side_correspondence(s, d)}


def test_subspace_oracle_bounds():
    d = datum("q-cbrt2")
    (s,) = enumerate_structures(d)
    with pytest.raises(PreconditionError):
        left_ideal_coideal_oracle(s.hopf)


def test_parallel_enumeration_matches_serial():
    d = datum("gf-2-6")
    serial = [s.summary() for s in enumerate_structures(d)]
    assert [s.summary() for s in enumerate_structures(d, jobs=2)] == serial
