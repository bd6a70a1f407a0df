import math

import pytest
from hypothesis import given, strategies as st
from sympy.combinatorics import Permutation, PermutationGroup

from hopfgalois.errors import BoundExceededError, InvariantViolation, PreconditionError
from hopfgalois.perm import (
    PermGroup,
    all_subgroups,
    closure,
    compose,
    conjugate,
    conjugation_action,
    coset_datum,
    cyclic_group,
    equivariant_subgroups,
    from_cycles,
    gp_act_correspondence,
    group_from_table,
    hg_candidates,
    hg_candidates_oracle,
    identity,
    inverse,
    orbit_map,
    perm_order,
    regular_subgroups,
    regular_subgroups_oracle,
    right_regular_subgroup,
    symmetric_group,
    trivial_group_action,
)

perms5 = st.permutations(list(range(5))).map(tuple)


def klein() -> PermGroup:
    return closure(4, [from_cycles(4, (0, 1), (2, 3)), from_cycles(4, (0, 2), (1, 3))])


@given(perms5, perms5, perms5)
def test_composition_is_associative(a, b, c):
    assert compose(a, compose(b, c)) == compose(compose(a, b), c)


@given(perms5, perms5)
def test_inverse_and_conjugation(a, s):
    assert compose(a, inverse(a)) == identity(5)
    assert conjugate(a, s) == compose(a, compose(s, inverse(a)))
    assert perm_order(conjugate(a, s)) == perm_order(s)


@given(st.lists(perms5, min_size=1, max_size=3))
def test_closure_order_matches_sympy(gens):
    ours = closure(5, gens, bound=120)
    theirs = PermutationGroup([Permutation(list(g)) for g in gens])
    assert ours.order == theirs.order()
    assert sorted(ours.elements) == list(ours.elements)


def test_composition_convention():
    s = from_cycles(3, (0, 1))
    t = from_cycles(3, (1, 2))
    # (s t)(i) = s(t(i))
    assert compose(s, t) == tuple(s[t[i]] for i in range(3))


@pytest.mark.parametrize(
    "g,count",
    [(lambda: symmetric_group(3), 6), (lambda: cyclic_group(4), 3), (klein, 5), (lambda: symmetric_group(4), 30)],
)
def test_subgroup_counts(g, count):
    subs = all_subgroups(g())
    assert len(subs) == count
    for h in subs:
        PermGroup(h.degree, h.gens, h.elements)  # re-validates closure


def test_subgroup_bound():
    with pytest.raises(BoundExceededError):
        all_subgroups(symmetric_group(5))


def _aut_order(g: PermGroup) -> int:
    """Brute-force automorphism count through images of the canonical generators."""
    gens = g.canonical_gens
    count = 0
    import itertools

    for imgs in itertools.product(g.elements, repeat=len(gens)):
        img_group = closure(g.degree, imgs)
        if img_group.order != g.order:
            continue
        # build the map by words; it is a homomorphism iff it is well defined
        phi = {g.identity: g.identity}
        frontier = [g.identity]
        ok = True
        while frontier and ok:
            nxt = []
            for x in frontier:
                for s, t in zip(gens, imgs):
                    y, z = compose(s, x), compose(t, phi[x])
                    if y in phi:
                        ok = ok and phi[y] == z
                    else:
                        phi[y] = z
                        nxt.append(y)
            frontier = nxt
        count += ok
    return count


@pytest.mark.parametrize("n,expected", [(1, 1), (2, 1), (3, 1), (4, 4), (5, 6), (6, 80), (7, 120)])
def test_regular_subgroup_counts(n, expected):
    found = regular_subgroups(n)
    assert len(found) == expected
    assert all(h.is_regular() for h in found)
    # n! / |Hol(G)| summed over isomorphism types
    by_type: dict = {}
    for h in found:
        key = tuple(sorted(perm_order(x) for x in h.elements)), h.is_abelian()
        by_type.setdefault(key, h)
    assert sum(math.factorial(n) // (n * _aut_order(h)) for h in by_type.values()) == expected


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_regular_search_agrees_with_exhaustive_oracle(n):
    assert [h.canonical_gens for h in regular_subgroups(n)] == [h.canonical_gens for h in regular_subgroups_oracle(n)]


def test_group_from_table_rejects_non_group():
    with pytest.raises(InvariantViolation):
        group_from_table([[0, 1], [0, 1]])


def test_cosets_and_translation_image():
    g = symmetric_group(3)
    h = closure(3, [from_cycles(3, (1, 2))])
    cd = coset_datum(g, h)
    assert cd.index == 3 and cd.rep(0) == identity(3)
    assert cd.lambda_img.is_transitive()
    with pytest.raises(PreconditionError):
        coset_datum(h, g)


@pytest.mark.parametrize(
    "g,gp,count",
    [
        (lambda: cyclic_group(3), lambda: closure(3, []), 1),
        (lambda: symmetric_group(3), lambda: closure(3, [from_cycles(3, (1, 2))]), 1),
        (lambda: cyclic_group(4), lambda: closure(4, []), 2),
        (klein, lambda: closure(4, []), 4),
    ],
)
def test_hopf_galois_candidates_match_oracle(g, gp, count):
    g, gp = g(), gp()
    fast = hg_candidates(g, gp)
    assert [n.canonical_gens for n in fast] == [n.canonical_gens for n in hg_candidates_oracle(g, gp)]
    assert len(fast) == count


def test_galois_s3_has_five_candidates():
    assert len(hg_candidates(symmetric_group(3), closure(3, []))) == 5


def test_right_regular_commutes_with_translations():
    g = symmetric_group(3)
    cd = coset_datum(g, closure(3, []))
    rho = right_regular_subgroup(cd)
    assert rho.is_regular()
    assert all(compose(a, s) == compose(s, a) for a in cd.lambda_img.elements for s in rho.elements)


def test_group_side_lemma_on_every_candidate():
    for g, gp in [(symmetric_group(3), closure(3, [])), (klein(), closure(4, [])), (cyclic_group(4), closure(4, []))]:
        cd = coset_datum(g, gp)
        for n in hg_candidates(g, gp):
            act = conjugation_action(cd, n)
            act.validate()
            beta = orbit_map(cd, n)
            for v in equivariant_subgroups(act):
                res = gp_act_correspondence(g, gp, n, act, beta, v, cd)
                assert res.iso_check
                assert res.u.order * n.order == g.order * v.order


def test_trivial_action_fails_compatibility():
    g = symmetric_group(3)
    cd = coset_datum(g, closure(3, []))
    lam = cd.lambda_img
    act = trivial_group_action(g, lam)
    with pytest.raises(PreconditionError):
        gp_act_correspondence(g, closure(3, []), lam, act, orbit_map(cd, lam), lam, cd)
