"""Univariate polynomials over the base field, characteristic polynomials, roots.

Polynomials are lists of coefficients, lowest degree first, with no trailing
zeros (the zero polynomial is ``[]``).
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Sequence

from .errors import InputError
from .linalg import Field, Matrix, PrimeField

Poly = list


def trim(f: Sequence) -> Poly:
    out = list(f)
    while out and not out[-1]:
        out.pop()
    return out


def degree(f: Sequence) -> int:
    return len(trim(f)) - 1


def padd(field: Field, f: Sequence, g: Sequence) -> Poly:
    n = max(len(f), len(g))
    r = field.reduce
    return trim(r((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)) for i in range(n))


def psub(field: Field, f: Sequence, g: Sequence) -> Poly:
    return padd(field, f, [-c for c in g])


def pmul(field: Field, f: Sequence, g: Sequence) -> Poly:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    out[i + j] += a * b
    r = field.reduce
    return trim(r(c) for c in out)


def pdivmod(field: Field, f: Sequence, g: Sequence) -> tuple[Poly, Poly]:
    g = trim(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    rem = trim(f)
    r = field.reduce
    inv = field.inv(g[-1])
    dg = len(g) - 1
    quo = [0] * max(len(rem) - dg, 0)
    while len(rem) - 1 >= dg and rem:
        shift = len(rem) - 1 - dg
        c = r(rem[-1] * inv)
        quo[shift] = c
        for i, b in enumerate(g):
            rem[shift + i] = r(rem[shift + i] - c * b)
        rem = trim(rem)
    return trim(quo), rem


def pmod(field: Field, f: Sequence, g: Sequence) -> Poly:
    return pdivmod(field, f, g)[1]


def monic(field: Field, f: Sequence) -> Poly:
    f = trim(f)
    if not f:
        return f
    inv = field.inv(f[-1])
    return [field.reduce(c * inv) for c in f]


def pgcd(field: Field, f: Sequence, g: Sequence) -> Poly:
    a, b = trim(f), trim(g)
    while b:
        a, b = b, pmod(field, a, b)
    return monic(field, a)


def ppowmod(field: Field, f: Sequence, e: int, m: Sequence) -> Poly:
    result: Poly = [1]
    base = pmod(field, f, m)
    while e:
        if e & 1:
            result = pmod(field, pmul(field, result, base), m)
        base = pmod(field, pmul(field, base, base), m)
        e >>= 1
    return result


def peval(field: Field, f: Sequence, x):
    acc = 0
    for c in reversed(f):
        acc = acc * x + c
    return field.reduce(acc)


# ---------------------------------------------------------------------------
# irreducibility over GF(p)
# ---------------------------------------------------------------------------


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(field: PrimeField, f: Sequence) -> bool:
    """Rabin's test for a polynomial over GF(p)."""
    f = monic(field, f)
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    p = field.p
    x = [0, 1]
    for q in _prime_factors(n):
        h = ppowmod(field, x, p ** (n // q), f)
        if degree(pgcd(field, f, psub(field, h, x))) != 0:
            return False
    return not psub(field, ppowmod(field, x, p**n, f), x)


def least_irreducible(field: PrimeField, n: int) -> Poly:
    """Lexicographically least monic irreducible of degree ``n``.

    Candidates ``x^n + a_{n-1} x^{n-1} + ... + a_0`` are ordered by the tuple
    ``(a_{n-1}, ..., a_0)``, i.e. coefficients read from the top down.
    """
    if n < 1:
        raise InputError("degree must be positive")
    for tail in itertools.product(range(field.p), repeat=n):
        f = list(reversed(tail)) + [1]
        if is_irreducible(field, f):
            return f
    raise AssertionError("no irreducible polynomial found")  # unreachable


# ---------------------------------------------------------------------------
# characteristic polynomial and roots
# ---------------------------------------------------------------------------


def charpoly(m: Matrix) -> Poly:
    """Characteristic polynomial ``det(x I - m)`` via Hessenberg reduction."""
    if m.nrows != m.ncols:
        raise InputError("characteristic polynomial of a non-square matrix")
    field = m.field
    r = field.reduce
    n = m.nrows
    a = [list(row) for row in m.rows]
    # similarity transform to upper Hessenberg form
    for k in range(n - 2):
        piv = next((i for i in range(k + 1, n) if a[i][k]), None)
        if piv is None:
            continue
        if piv != k + 1:
            a[k + 1], a[piv] = a[piv], a[k + 1]
            for row in a:
                row[k + 1], row[piv] = row[piv], row[k + 1]
        inv = field.inv(a[k + 1][k])
        for i in range(k + 2, n):
            t = r(a[i][k] * inv)
            if t:
                a[i] = [r(x - t * y) for x, y in zip(a[i], a[k + 1])]
                for row in a:
                    row[k + 1] = r(row[k + 1] + t * row[i])
    # recurrence on leading principal minors
    polys: list[Poly] = [[1]]
    for k in range(n):
        cur = pmul(field, [r(-a[k][k]), 1], polys[k])
        prod = 1
        for i in range(k - 1, -1, -1):
            prod = r(prod * a[i + 1][i])
            if not prod:
                break
            term = [r(-prod * a[i][k] * c) for c in polys[i]]
            cur = padd(field, cur, term)
        polys.append(cur)
    return polys[n]


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def roots(field: Field, f: Sequence) -> list:
    """Distinct roots of ``f`` lying in the base field, in increasing order."""
    f = trim(f)
    if len(f) <= 1:
        return []
    if field.is_finite:
        return _roots_gfp(field, f)
    return _roots_q(field, f)


def _roots_gfp(field: PrimeField, f: Poly) -> list[int]:
    p = field.p
    if p <= 4096:
        return [x for x in range(p) if not peval(field, f, x)]
    # restrict to the split part, then split deterministically
    g = pgcd(field, f, psub(field, ppowmod(field, [0, 1], p, f), [0, 1]))
    found: list[int] = []
    stack = [g]
    while stack:
        h = stack.pop()
        d = degree(h)
        if d <= 0:
            continue
        if d == 1:
            found.append(field.reduce(-h[0]))
            continue
        for a in range(p):
            w = ppowmod(field, [a, 1], (p - 1) // 2, h)
            s = pgcd(field, h, psub(field, w, [1]))
            if 0 < degree(s) < d:
                stack.append(s)
                stack.append(pdivmod(field, h, s)[0])
                break
    return sorted(set(found))


def _roots_q(field: Field, f: Poly) -> list:
    # strip zero roots, then clear denominators for the rational root theorem
    out = []
    while f and f[0] == 0:
        f = f[1:]
        if 0 not in out:
            out.append(0)
    if len(f) > 1:
        den = math.lcm(*(Fraction(c).denominator for c in f))
        ints = [int(Fraction(c) * den) for c in f]
        g = math.gcd(*ints)
        ints = [c // g for c in ints]
        for p_ in _divisors(ints[0]):
            for q_ in _divisors(ints[-1]):
                for cand in (Fraction(p_, q_), Fraction(-p_, q_)):
                    c = field.reduce(cand)
                    if c not in out and peval(field, ints, cand) == 0:
                        out.append(c)
    return sorted(out)
