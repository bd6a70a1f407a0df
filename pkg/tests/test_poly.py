import itertools

import pytest
import sympy
from hypothesis import given, strategies as st

from hopfgalois.linalg import GF, QQ, Matrix
from hopfgalois.poly import charpoly, is_irreducible, least_irreducible, pdivmod, pmul, padd, roots, trim

X = sympy.Symbol("x")


def sympy_poly(f, p=None):
    expr = sum(sympy.Rational(c) * X**i for i, c in enumerate(f))
    return sympy.Poly(expr, X, modulus=p) if p else sympy.Poly(expr, X, domain="QQ")


@pytest.mark.parametrize(
    "p,n,expected",
    [
        (2, 2, [1, 1, 1]),
        (2, 3, [1, 1, 0, 1]),
        (2, 4, [1, 1, 0, 0, 1]),
        (2, 6, [1, 1, 0, 0, 0, 0, 1]),
        (2, 8, [1, 1, 0, 1, 1, 0, 0, 0, 1]),
        (3, 4, [2, 1, 0, 0, 1]),
    ],
)
def test_least_irreducible(p, n, expected):
    assert least_irreducible(GF(p), n) == expected


@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)])
def test_irreducibility_matches_sympy_exhaustively(p, n):
    f = GF(p)
    for tail in itertools.product(range(p), repeat=n):
        poly = list(tail) + [1]
        assert is_irreducible(f, poly) == sympy_poly(poly, p).is_irreducible


@given(st.sampled_from([2, 3, 5, 7]), st.lists(st.integers(0, 6), min_size=1, max_size=5), st.lists(st.integers(0, 6), min_size=2, max_size=4))
def test_division_identity(p, a, b):
    f = GF(p)
    a = [f.reduce(x) for x in a]
    b = [f.reduce(x) for x in b]
    if not any(b):
        return
    q, r = pdivmod(f, a, b)
    assert trim(padd(f, pmul(f, q, b), r)) == trim(a)
    assert len(trim(r)) < len(trim(b))


@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=4, max_size=4))
def test_charpoly_matches_sympy_over_q(rows):
    ours = charpoly(Matrix(QQ, rows))
    theirs = sympy.Matrix(rows).charpoly(X).all_coeffs()[::-1]
    assert ours == [int(c) for c in theirs]


@given(st.sampled_from([2, 3, 5]), st.lists(st.lists(st.integers(0, 4), min_size=3, max_size=3), min_size=3, max_size=3))
def test_charpoly_over_gf_is_determinant_polynomial(p, rows):
    f = GF(p)
    m = Matrix(f, rows)
    cp = charpoly(m)
    # evaluate det(t I - m) at every t in GF(p) by brute force
    for t in range(p):
        shifted = Matrix(f, [[(t if i == j else 0) - m[i, j] for j in range(3)] for i in range(3)])
        det = int(sympy.Matrix(shifted.rows).det()) % p
        val = sum(c * t**i for i, c in enumerate(cp)) % p
        assert det == val


@given(st.lists(st.integers(-4, 4), min_size=2, max_size=5))
def test_rational_roots_match_sympy(coeffs):
    if not any(coeffs[1:]):
        return
    ours = roots(QQ, coeffs)
    theirs = sorted(r for r in sympy_poly(coeffs).ground_roots())
    assert [sympy.Rational(str(r)) for r in ours] == theirs


def test_large_prime_roots_by_splitting():
    p = 7919  # above the brute-force threshold
    f = GF(p)
    poly = pmul(f, pmul(f, [f.reduce(-3), 1], [f.reduce(-1234), 1]), [1, 0, 1])
    assert roots(f, poly) == sorted({3, 1234} | ({x for x in range(p) if (x * x + 1) % p == 0}))
