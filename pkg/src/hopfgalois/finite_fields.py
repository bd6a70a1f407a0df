"""Finite fields GF(p^n) presented as GF(p)-algebras on the power basis."""

from __future__ import annotations

import itertools
from typing import Sequence

from .errors import BoundExceededError, InputError
from .hopf import FinAlgebra
from .linalg import GF, Matrix, PrimeField, unit_vector
from .poly import is_irreducible, least_irreducible, peval

MAX_FIELD_SIZE = 2**16


def gf_algebra(p: int, n: int, poly: Sequence[int] | None = None) -> tuple[FinAlgebra, list[int]]:
    """``GF(p)[x]/(f)`` on the basis ``1, x, ..., x^{n-1}``.

    ``f`` defaults to the lexicographically least monic irreducible of degree ``n``.
    Returns the algebra and ``f`` (coefficients lowest degree first).
    """
    field = GF(p)
    if p**n > MAX_FIELD_SIZE:
        raise BoundExceededError(f"GF({p}^{n}) exceeds the size bound {MAX_FIELD_SIZE}", bound=MAX_FIELD_SIZE)
    f = list(poly) if poly is not None else least_irreducible(field, n)
    if len(f) != n + 1 or f[-1] % p != 1 or not is_irreducible(field, f):
        raise InputError(f"{f!r} is not a monic irreducible of degree {n} over GF({p})")
    # powers x^0 .. x^{2n-2} reduced modulo f
    powers = []
    cur = [0] * n
    cur[0] = 1
    for _ in range(2 * n - 1):
        powers.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [(c - top * fc) % p for c, fc in zip(cur, f[:-1])]
    cols = [powers[i + j] for i in range(n) for j in range(n)]
    alg = FinAlgebra(field, Matrix.from_columns(field, cols, n), unit_vector(n, 0), check=False)
    return alg, f


def frobenius_matrix(alg: FinAlgebra) -> Matrix:
    p = alg.field.char
    cols = [alg.power(unit_vector(alg.dim, j), p) for j in range(alg.dim)]
    return Matrix.from_columns(alg.field, cols, alg.dim)


def frobenius_powers(alg: FinAlgebra) -> list[Matrix]:
    """``Frob^0, ..., Frob^{n-1}``."""
    fr = frobenius_matrix(alg)
    out = [Matrix.identity(alg.field, alg.dim)]
    for _ in range(alg.dim - 1):
        out.append(fr @ out[-1])
    return out


def elements(alg: FinAlgebra):
    field = alg.field
    assert isinstance(field, PrimeField)
    return itertools.product(range(field.p), repeat=alg.dim)


def eval_poly_in(alg: FinAlgebra, f: Sequence[int], x: Sequence) -> tuple:
    acc = tuple(0 for _ in range(alg.dim))
    for c in reversed(f):
        acc = alg.product(acc, x)
        acc = tuple(alg.field.reduce(a + c * u) for a, u in zip(acc, alg.unit))
    return acc


def smallest_root(alg: FinAlgebra, f: Sequence[int]) -> tuple:
    """Lexicographically least coordinate vector ``r`` with ``f(r) = 0``."""
    for x in elements(alg):
        if not any(eval_poly_in(alg, f, x)):
            return tuple(x)
    raise InputError("polynomial has no root in the algebra")


def embedding_matrix(big: FinAlgebra, root: Sequence, n: int) -> Matrix:
    """Columns ``root^j`` for ``j < n``: the embedding of ``GF(p)[x]/(f)`` sending ``x`` to ``root``."""
    return Matrix.from_columns(big.field, [big.power(root, j) for j in range(n)], big.dim)


def is_ring_map(src: FinAlgebra, dst: FinAlgebra, m: Matrix) -> bool:
    if m.apply(src.unit) != dst.unit:
        return False
    cols = m.columns()
    for i in range(src.dim):
        for j in range(src.dim):
            if m.apply(src.table[i][j]) != dst.product(cols[i], cols[j]):
                return False
    return True
