import pytest
from hypothesis import given, settings, strategies as st

from hopfgalois.action import (
    ModuleAlgebraDatum,
    base_change,
    canonical_map,
    coaction_side,
    correspondence_lattice,
    fixed_space,
    four_fold_invariants,
    group_action_datum,
    is_subfield,
    lattice_ops,
    relative_galois_check,
    subextension_flags,
    trivial_action,
    verify_module_algebra,
)
from hopfgalois.errors import CorrespondenceError, InvariantViolation, PreconditionError
from hopfgalois.finite_fields import elements, embedding_matrix, frobenius_powers, gf_algebra, smallest_root
from hopfgalois.hopf import group_algebra
from hopfgalois.linalg import GF, Matrix, Subspace, all_subspaces
from hopfgalois.perm import all_subgroups, compose, cyclic_group


def classical_gf(p, n):
    alg, f = gf_algebra(p, n)
    g = cyclic_group(n)
    powers = frobenius_powers(alg)
    h = group_algebra(g, GF(p))
    # the rotation sending 0 to s acts as the s-th Frobenius power
    return group_action_datum(h, alg, [powers[a[0]] for a in g.elements]), g


def psi_ideal(g, a, fld):
    vecs = []
    for x in g.elements:
        for y in a.elements:
            v = [0] * g.order
            v[g.index(compose(x, y))] += 1
            v[g.index(x)] -= 1
            vecs.append(v)
    return Subspace.span(fld, g.order, vecs)


def subfields_by_roots(p, n):
    """``GF(p^k)`` inside ``GF(p^n)`` as the roots of ``x^(p^k) - x``."""
    alg, _ = gf_algebra(p, n)
    out = {}
    for k in range(1, n + 1):
        if n % k == 0:
            fixed = [x for x in elements(alg) if alg.power(x, p**k) == tuple(x)]
            out[k] = Subspace.span(GF(p), n, fixed)
    return out


@pytest.mark.parametrize("p,n,dims", [(2, 2, [1, 2]), (2, 4, [1, 2, 4]), (2, 6, [1, 2, 3, 6]), (3, 2, [1, 2])])
def test_classical_lattice_matches_subfields(p, n, dims):
    d, g = classical_gf(p, n)
    assert canonical_map(d).bijective
    ideals = [psi_ideal(g, a, GF(p)) for a in all_subgroups(g)]
    lat = correspondence_lattice(d, ideals)
    assert [r.dim for r in lat.rows] == dims
    oracle = subfields_by_roots(p, n)
    assert {r.field for r in lat.rows} == set(oracle.values())
    # a cyclic group: every subextension is normal
    assert all(r.h_normal and r.hopf_ideal for r in lat.rows)
    assert len(lat.edges) == sum(1 for i in dims for j in dims if j > i and j % i == 0 and not any(i < k < j and k % i == 0 and j % k == 0 for k in dims))


def test_subfield_filter_agrees_with_root_oracle():
    d, _ = classical_gf(2, 4)
    found = [s for s in all_subspaces(GF(2), 4) if is_subfield(d.algebra, s)]
    assert set(found) == set(subfields_by_roots(2, 4).values())


def test_trivial_action_is_not_galois():
    d, _ = classical_gf(2, 2)
    t = trivial_action(d.hopf, d.algebra)
    rep = canonical_map(t)
    assert not rep.bijective and rep.rank == 2
    with pytest.raises(CorrespondenceError):
        correspondence_lattice(t, [])
    side = coaction_side(t)
    assert not side.can_bijective and not side.can_star_bijective


def test_corrupted_action_is_rejected():
    d, _ = classical_gf(2, 3)
    cols = d.act.columns()
    bad = list(cols)
    bad[3] = cols[4]
    m = Matrix.from_columns(d.field, bad, d.dl)
    assert not verify_module_algebra(ModuleAlgebraDatum(d.hopf, d.algebra, m, check=False)).ok
    with pytest.raises(InvariantViolation):
        ModuleAlgebraDatum(d.hopf, d.algebra, m)


@settings(max_examples=25)
@given(st.data())
def test_module_algebra_law_on_random_elements(data):
    d, _ = classical_gf(2, 4)
    h = d.hopf
    vec = lambda n: st.lists(st.integers(0, 1), min_size=n, max_size=n).map(tuple)
    hv, x, y = data.draw(vec(h.dim)), data.draw(vec(4)), data.draw(vec(4))
    lhs = d.apply(hv, d.algebra.product(x, y))
    # h . (xy) = sum (h1 . x)(h2 . y); on grouplike basis vectors that is g.x g.y
    rhs = [0] * 4
    for i, c in enumerate(hv):
        if c:
            e = tuple(int(k == i) for k in range(h.dim))
            prod = d.algebra.product(d.apply(e, x), d.apply(e, y))
            rhs = [(a + b) % 2 for a, b in zip(rhs, prod)]
    assert lhs == tuple(rhs)


def test_subextension_flags_reject_non_subfields():
    d, _ = classical_gf(2, 4)
    with pytest.raises(PreconditionError):
        subextension_flags(d, Subspace.span(GF(2), 4, [(0, 1, 0, 0)]))
    info = subextension_flags(d, Subspace.span(GF(2), 4, [d.algebra.unit]))
    assert info.h_subextension and info.j == d.hopf.augmentation_ideal


def test_lattice_operations_on_gf64():
    d, g = classical_gf(2, 6)
    subs = subfields_by_roots(2, 6)
    f2, f3 = subextension_flags(d, subs[2]), subextension_flags(d, subs[3])
    out = lattice_ops(d, f2, f3)
    assert out["compositum"].space == subs[6]
    assert out["intersection"].space == subs[1]
    assert out["compositum"].h_normal and out["intersection"].h_normal


def test_relative_galois_on_gf16():
    d, _ = classical_gf(2, 4)
    for l0 in subfields_by_roots(2, 4).values():
        assert relative_galois_check(d, subextension_flags(d, l0))


def test_coaction_side_and_invariants():
    d, g = classical_gf(3, 2)
    ideals = [psi_ideal(g, a, GF(3)) for a in all_subgroups(g)]
    side = coaction_side(d, ideals)
    assert side.can_bijective and side.can_star_bijective
    for i in ideals:
        assert four_fold_invariants(d, i) == fixed_space(d, i)


def test_base_change_commutes_with_invariants():
    d, g = classical_gf(2, 2)
    big, _ = gf_algebra(2, 4)
    f_lo = [1, 1, 1]
    emb = embedding_matrix(big, smallest_root(big, f_lo), 2)
    ideals = [psi_ideal(g, a, GF(2)) for a in all_subgroups(g)]
    bc = base_change(d, big, emb, ideals)
    assert bc.dim == 8 and bc.checked == len(ideals)
    with pytest.raises(PreconditionError):
        base_change(d, big, Matrix.identity(GF(2), 4).T @ Matrix(GF(2), [[1, 0], [0, 0], [0, 0], [0, 0]], 2), ideals)
