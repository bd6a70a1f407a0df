import pytest
from hypothesis import given, strategies as st

from hopfgalois.errors import BoundExceededError, InputError
from hopfgalois.finite_fields import (
    elements,
    embedding_matrix,
    eval_poly_in,
    frobenius_matrix,
    frobenius_powers,
    gf_algebra,
    is_ring_map,
    smallest_root,
)
from hopfgalois.linalg import Matrix


@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)])
def test_gf_algebra_is_a_field_with_cyclic_frobenius(p, n):
    alg, f = gf_algebra(p, n)
    assert alg.is_field()
    powers = frobenius_powers(alg)
    assert len(set(powers)) == n
    fr = frobenius_matrix(alg)
    assert fr @ powers[-1] == Matrix.identity(alg.field, n)
    assert all(is_ring_map(alg, alg, m) for m in powers)


def test_frobenius_on_gf4_is_squaring():
    alg, f = gf_algebra(2, 2)
    assert f == [1, 1, 1]
    # x^2 = x + 1 in GF(2)[x]/(x^2 + x + 1)
    assert frobenius_matrix(alg).column(1) == (1, 1)


@given(st.sampled_from([(2, 3), (3, 2), (2, 4)]), st.data())
def test_frobenius_is_multiplicative_and_fixes_prime_field(pn, data):
    p, n = pn
    alg, _ = gf_algebra(p, n)
    fr = frobenius_matrix(alg)
    vec = st.lists(st.integers(0, p - 1), min_size=n, max_size=n).map(tuple)
    x, y = data.draw(vec), data.draw(vec)
    assert fr.apply(alg.product(x, y)) == alg.product(fr.apply(x), fr.apply(y))
    assert fr.apply(alg.power(x, 1)) == alg.power(x, p)
    c = data.draw(st.integers(0, p - 1))
    assert fr.apply(tuple(c * u for u in alg.unit)) == tuple(c * u % p for u in alg.unit)


@pytest.mark.parametrize("p,small,big", [(2, 2, 4), (2, 2, 6), (2, 3, 6), (3, 2, 4)])
def test_embeddings_between_levels(p, small, big):
    lo, f_lo = gf_algebra(p, small)
    hi, _ = gf_algebra(p, big)
    root = smallest_root(hi, f_lo)
    assert not any(eval_poly_in(hi, f_lo, root))
    # lexicographically least among all roots
    all_roots = [tuple(x) for x in elements(hi) if not any(eval_poly_in(hi, f_lo, x))]
    assert root == min(all_roots) and len(all_roots) == small
    emb = embedding_matrix(hi, root, small)
    assert is_ring_map(lo, hi, emb) and emb.rank() == small


def test_bounds_and_bad_polynomials():
    with pytest.raises(BoundExceededError):
        gf_algebra(2, 17)
    with pytest.raises(InputError):
        gf_algebra(2, 2, [1, 0, 1])
