"""Finite-dimensional algebras, coalgebras and Hopf algebras as structure tensors.

Conventions (basis ``e_0 .. e_{d-1}``):

* ``mul`` is a ``d x d^2`` matrix whose column ``i*d + j`` holds ``e_i e_j``;
* ``unit`` is the coordinate vector of ``1``;
* ``comul`` is a ``d^2 x d`` matrix whose column ``k`` holds ``Delta(e_k)``;
* ``counit`` is the row vector of ``epsilon(e_k)``;
* ``antipode`` is the ``d x d`` matrix of ``S``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .errors import DimensionError, InvariantViolation, NonSplitError, PreconditionError
from .linalg import (
    Field,
    Matrix,
    Subspace,
    check_same_field,
    kron,
    rref_solve,
    unit_vector,
)
from .perm import PermGroup, compose, inverse
from .poly import charpoly, pdivmod, roots


def _vec_reduce(field: Field, acc: Sequence) -> tuple:
    r = field.reduce
    return tuple(r(a) for a in acc)


# ---------------------------------------------------------------------------
# algebras
# ---------------------------------------------------------------------------


class FinAlgebra:
    """Associative unital algebra given by structure constants."""

    def __init__(self, field: Field, mul: Matrix, unit: Sequence, *, check: bool = True):
        d = mul.nrows
        if mul.ncols != d * d:
            raise DimensionError(f"multiplication matrix must be {d} x {d * d}, got {mul.shape}")
        if len(unit) != d:
            raise DimensionError("unit vector has the wrong length")
        check_same_field(field, mul.field)
        self.field = field
        self.dim = d
        self.mul = mul
        self.unit = _vec_reduce(field, unit)
        cols = mul.columns() if d else []
        self.table = [[cols[i * d + j] for j in range(d)] for i in range(d)]
        if check:
            self.verify()

    @classmethod
    def from_table(cls, field: Field, table: Sequence[Sequence[Sequence]], unit: Sequence, **kw) -> "FinAlgebra":
        d = len(table)
        cols = [table[i][j] for i in range(d) for j in range(d)]
        return cls(field, Matrix.from_columns(field, cols, d), unit, **kw)

    def __eq__(self, other):
        return isinstance(other, FinAlgebra) and self.mul == other.mul and self.unit == other.unit

    def __hash__(self):
        return hash((self.mul, self.unit))

    def product(self, x: Sequence, y: Sequence) -> tuple:
        d = self.dim
        acc = [0] * d
        table = self.table
        for i, a in enumerate(x):
            if a:
                row = table[i]
                for j, b in enumerate(y):
                    if b:
                        c = a * b
                        for k, t in enumerate(row[j]):
                            if t:
                                acc[k] += c * t
        return _vec_reduce(self.field, acc)

    def left_mult(self, x: Sequence) -> Matrix:
        """Matrix of ``y -> x y``."""
        return Matrix.from_columns(self.field, [self.product(x, unit_vector(self.dim, j)) for j in range(self.dim)], self.dim)

    def right_mult(self, x: Sequence) -> Matrix:
        return Matrix.from_columns(self.field, [self.product(unit_vector(self.dim, j), x) for j in range(self.dim)], self.dim)

    def power(self, x: Sequence, e: int) -> tuple:
        result = self.unit
        base = tuple(x)
        while e:
            if e & 1:
                result = self.product(result, base)
            base = self.product(base, base)
            e >>= 1
        return result

    def is_commutative(self) -> bool:
        t = self.table
        return all(t[i][j] == t[j][i] for i in range(self.dim) for j in range(i))

    def verify(self):
        """Raise :class:`InvariantViolation` unless associative with two-sided unit."""
        bad = self.first_violation()
        if bad is not None:
            raise InvariantViolation(bad[0], f"algebra axiom fails: {bad[0]}", witness=bad[1])

    def first_violation(self):
        d = self.dim
        e = [unit_vector(d, i) for i in range(d)]
        for i in range(d):
            if self.product(self.unit, e[i]) != e[i] or self.product(e[i], self.unit) != e[i]:
                return ("unit", [i])
        for i in range(d):
            for j in range(d):
                ij = self.table[i][j]
                for k in range(d):
                    if self.product(ij, e[k]) != self.product(e[i], self.table[j][k]):
                        return ("associativity", [i, j, k])
        return None

    def subalgebra_generated(self, gens: Sequence[Sequence]) -> Subspace:
        """Smallest subalgebra containing ``gens`` (closure under products, RREF per round)."""
        cur = Subspace.span(self.field, self.dim, [self.unit, *gens])
        while True:
            prods = [self.product(a, b) for a in cur.basis for b in cur.basis]
            nxt = Subspace.span(self.field, self.dim, list(cur.basis) + prods)
            if nxt == cur:
                return cur
            cur = nxt

    def is_field(self, exhaustive_limit: int = 4096) -> bool:
        """Commutative, every nonzero element invertible.

        Checks nonsingular multiplication on each basis vector and on the sums
        ``e_i + e_j``; when the algebra is finite with at most ``exhaustive_limit``
        elements, every nonzero element is checked.
        """
        if not self.is_commutative():
            return False
        d = self.dim
        if d == 0:
            return False
        f = self.field
        if f.is_finite and f.char**d <= exhaustive_limit:
            import itertools

            for v in itertools.product(range(f.char), repeat=d):
                if any(v) and not self.left_mult(v).is_invertible():
                    return False
            return True
        spanning = [unit_vector(d, i) for i in range(d)]
        spanning += [tuple(a + b for a, b in zip(spanning[i], spanning[j])) for i in range(d) for j in range(i)]
        return all(self.left_mult(v).is_invertible() for v in spanning if any(v))

    def restrict(self, sub: Subspace) -> "FinAlgebra":
        """The subalgebra ``sub`` in the coordinates of its canonical basis."""
        cols = []
        for a in sub.basis:
            for b in sub.basis:
                cols.append(sub.coords(self.product(a, b)))
        mul = Matrix.from_columns(self.field, cols, sub.dim)
        return FinAlgebra(self.field, mul, sub.coords(self.unit))

    def to_json_table(self) -> list:
        fmt = self.field.fmt
        return [[[fmt(x) for x in self.table[i][j]] for j in range(self.dim)] for i in range(self.dim)]


def tensor_algebra(a: FinAlgebra, b: FinAlgebra) -> FinAlgebra:
    """``A (x) B`` with componentwise product."""
    check_same_field(a.field, b.field)
    da, db = a.dim, b.dim
    cols = []
    for i in range(da):
        for j in range(db):
            for k in range(da):
                for l in range(db):
                    x = a.table[i][k]
                    y = b.table[j][l]
                    cols.append(tuple(s * t for s in x for t in y))
    mul = Matrix.from_columns(a.field, cols, da * db)
    unit = tuple(s * t for s in a.unit for t in b.unit)
    return FinAlgebra(a.field, mul, unit, check=False)


# ---------------------------------------------------------------------------
# coalgebras
# ---------------------------------------------------------------------------


class FinCoalgebra:
    def __init__(self, field: Field, comul: Matrix, counit: Sequence, *, check: bool = True):
        d = comul.ncols
        if comul.nrows != d * d:
            raise DimensionError(f"comultiplication matrix must be {d * d} x {d}, got {comul.shape}")
        if len(counit) != d:
            raise DimensionError("counit has the wrong length")
        check_same_field(field, comul.field)
        self.field = field
        self.dim = d
        self.comul = comul
        self.counit = _vec_reduce(field, counit)
        if check:
            self.verify()

    def __eq__(self, other):
        return isinstance(other, FinCoalgebra) and self.comul == other.comul and self.counit == other.counit

    def __hash__(self):
        return hash((self.comul, self.counit))

    def delta(self, x: Sequence) -> tuple:
        return self.comul.apply(x)

    def eps(self, x: Sequence):
        return self.field.reduce(sum(a * b for a, b in zip(self.counit, x)))

    @cached_property
    def counit_matrix(self) -> Matrix:
        return Matrix(self.field, [self.counit], self.dim, reduced=True)

    def is_cocommutative(self) -> bool:
        d = self.dim
        flip = Matrix.permutation(self.field, [j * d + i for i in range(d) for j in range(d)])
        return flip @ self.comul == self.comul

    def first_violation(self):
        d = self.dim
        f = self.field
        ident = Matrix.identity(f, d)
        left = kron(self.comul, ident) @ self.comul
        right = kron(ident, self.comul) @ self.comul
        for k in range(d):
            if left.column(k) != right.column(k):
                return ("coassociativity", [k])
        lc = kron(self.counit_matrix, ident) @ self.comul
        rc = kron(ident, self.counit_matrix) @ self.comul
        for k in range(d):
            if lc.column(k) != unit_vector(d, k) or rc.column(k) != unit_vector(d, k):
                return ("counit", [k])
        return None

    def verify(self):
        bad = self.first_violation()
        if bad is not None:
            raise InvariantViolation(bad[0], f"coalgebra axiom fails: {bad[0]}", witness=bad[1])

    def is_grouplike(self, x: Sequence) -> bool:
        return self.eps(x) == 1 and self.delta(x) == _vec_reduce(self.field, [a * b for a in x for b in x])


def dualize(a: FinAlgebra) -> FinCoalgebra:
    """The dual coalgebra: ``Delta(f)(x (x) y) = f(xy)`` in the dual basis."""
    return FinCoalgebra(a.field, a.mul.T, a.unit, check=False)


def dualize_coalgebra(c: FinCoalgebra) -> FinAlgebra:
    """The dual algebra ``C*`` with convolution product."""
    return FinAlgebra(c.field, c.comul.T, c.counit, check=False)


# ---------------------------------------------------------------------------
# Hopf algebras
# ---------------------------------------------------------------------------


class HopfAlgebraData:
    def __init__(self, algebra: FinAlgebra, coalgebra: FinCoalgebra, antipode: Matrix | None = None, *, check: bool = True):
        if algebra.dim != coalgebra.dim:
            raise DimensionError("algebra and coalgebra dimensions differ")
        self.field = check_same_field(algebra.field, coalgebra.field)
        self.algebra = algebra
        self.coalgebra = coalgebra
        self.dim = algebra.dim
        if antipode is None:
            antipode = solve_antipode(algebra, coalgebra)
        if antipode.shape != (self.dim, self.dim):
            raise DimensionError("antipode must be square of the algebra dimension")
        self.antipode = antipode
        if check:
            rep = verify_axioms(self)
            if not rep.hopf:
                name, witness = rep.failures[0]
                raise InvariantViolation(name, f"Hopf axiom fails: {name}", witness=witness)

    # shorthand
    @property
    def mul(self) -> Matrix:
        return self.algebra.mul

    @property
    def unit(self) -> tuple:
        return self.algebra.unit

    @property
    def comul(self) -> Matrix:
        return self.coalgebra.comul

    @property
    def counit(self) -> tuple:
        return self.coalgebra.counit

    def product(self, x, y) -> tuple:
        return self.algebra.product(x, y)

    def delta(self, x) -> tuple:
        return self.coalgebra.delta(x)

    def eps(self, x):
        return self.coalgebra.eps(x)

    def S(self, x) -> tuple:
        return self.antipode.apply(x)

    def basis(self) -> list[tuple]:
        return [unit_vector(self.dim, i) for i in range(self.dim)]

    @cached_property
    def augmentation_ideal(self) -> Subspace:
        m = Matrix(self.field, [self.counit], self.dim, reduced=True)
        return m.kernel()

    def __eq__(self, other):
        return (
            isinstance(other, HopfAlgebraData)
            and self.algebra == other.algebra
            and self.coalgebra == other.coalgebra
            and self.antipode == other.antipode
        )

    def __hash__(self):
        return hash((self.algebra, self.coalgebra, self.antipode))

    def __repr__(self):
        return f"HopfAlgebraData(dim={self.dim}, field={self.field})"

    def tensor_product(self, x: Sequence, y: Sequence) -> tuple:
        """Product in ``H (x) H`` of two vectors of length ``d^2``."""
        d = self.dim
        acc = [0] * (d * d)
        table = self.algebra.table
        xs = [(a // d, a % d, c) for a, c in enumerate(x) if c]
        ys = [(b // d, b % d, c) for b, c in enumerate(y) if c]
        for i1, i2, c1 in xs:
            for j1, j2, c2 in ys:
                u = table[i1][j1]
                v = table[i2][j2]
                c = c1 * c2
                for p, up in enumerate(u):
                    if up:
                        base = p * d
                        for q, vq in enumerate(v):
                            if vq:
                                acc[base + q] += c * up * vq
        return _vec_reduce(self.field, acc)

    def change_basis(self, p: Matrix) -> "HopfAlgebraData":
        """Structure tensors in the basis given by the columns of ``p``."""
        pinv = p.inverse()
        mul = pinv @ self.mul @ kron(p, p)
        unit = pinv.apply(self.unit)
        comul = kron(pinv, pinv) @ self.comul @ p
        counit = Matrix(self.field, [self.counit], self.dim, reduced=True) @ p
        s = pinv @ self.antipode @ p
        return HopfAlgebraData(
            FinAlgebra(self.field, mul, unit, check=False),
            FinCoalgebra(self.field, comul, counit.rows[0], check=False),
            s,
            check=False,
        )

    def to_json(self) -> dict:
        fmt = self.field.fmt
        d = self.dim
        return {
            "dim": d,
            "mul": self.algebra.to_json_table(),
            "unit": [fmt(x) for x in self.unit],
            "comul": [[[fmt(self.comul[a * d + b, k]) for b in range(d)] for a in range(d)] for k in range(d)],
            "counit": [fmt(x) for x in self.counit],
            "antipode": self.antipode.to_lists(),
        }


def solve_antipode(algebra: FinAlgebra, coalgebra: FinCoalgebra) -> Matrix:
    """Convolution inverse of the identity: ``S(h_(1)) h_(2) = eps(h) 1``."""
    f = algebra.field
    d = algebra.dim
    # unknown S[k][a] at index k*d + a; equation for (h, output coordinate r)
    rows = []
    rhs = []
    for h in range(d):
        dh = coalgebra.comul.column(h)
        for r in range(d):
            row = [0] * (d * d)
            for ab, c in enumerate(dh):
                if c:
                    a, b = divmod(ab, d)
                    for k in range(d):
                        t = algebra.table[k][b][r]
                        if t:
                            row[k * d + a] += c * t
            rows.append(row)
            rhs.append([coalgebra.counit[h] * algebra.unit[r]])
    res = rref_solve(Matrix(f, rows, d * d), Matrix(f, rhs, 1))
    if res.solution is None:
        raise InvariantViolation("antipode", "no antipode exists (identity is not convolution invertible)")
    sol = res.solution.column(0)
    return Matrix(f, [[sol[k * d + a] for a in range(d)] for k in range(d)], d)


@dataclass
class AxiomReport:
    algebra: bool = True
    coalgebra: bool = True
    bialgebra: bool = True
    antipode: bool = True
    cocommutative: bool = True
    commutative: bool = True
    failures: list = field(default_factory=list)

    @property
    def hopf(self) -> bool:
        return self.algebra and self.coalgebra and self.bialgebra and self.antipode

    def as_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "coalgebra": self.coalgebra,
            "bialgebra": self.bialgebra,
            "antipode": self.antipode,
            "cocommutative": self.cocommutative,
            "commutative": self.commutative,
            "failures": [{"identity": n, "witness": w} for n, w in self.failures],
        }


def verify_axioms(h: HopfAlgebraData) -> AxiomReport:
    rep = AxiomReport()
    f = h.field
    d = h.dim
    bad = h.algebra.first_violation()
    if bad:
        rep.algebra = False
        rep.failures.append(bad)
    bad = h.coalgebra.first_violation()
    if bad:
        rep.coalgebra = False
        rep.failures.append(bad)

    e = h.basis()
    deltas = [h.comul.column(i) for i in range(d)]
    one = h.unit
    if h.delta(one) != _vec_reduce(f, [a * b for a in one for b in one]):
        rep.bialgebra = False
        rep.failures.append(("comultiplication-unit", []))
    elif h.eps(one) != 1:
        rep.bialgebra = False
        rep.failures.append(("counit-unit", []))
    else:
        for i in range(d):
            for j in range(d):
                ij = h.algebra.table[i][j]
                if h.delta(ij) != h.tensor_product(deltas[i], deltas[j]):
                    rep.bialgebra = False
                    rep.failures.append(("comultiplication-multiplicative", [i, j]))
                    break
                if h.eps(ij) != f.reduce(h.counit[i] * h.counit[j]):
                    rep.bialgebra = False
                    rep.failures.append(("counit-multiplicative", [i, j]))
                    break
            if not rep.bialgebra:
                break

    s_cols = [h.antipode.column(i) for i in range(d)]
    for k in range(d):
        lhs = [0] * d
        rhs = [0] * d
        for ab, c in enumerate(deltas[k]):
            if c:
                a, b = divmod(ab, d)
                left = h.product(s_cols[a], e[b])
                right = h.product(e[a], s_cols[b])
                for r in range(d):
                    lhs[r] += c * left[r]
                    rhs[r] += c * right[r]
        target = _vec_reduce(f, [h.counit[k] * u for u in one])
        if _vec_reduce(f, lhs) != target or _vec_reduce(f, rhs) != target:
            rep.antipode = False
            rep.failures.append(("antipode", [k]))
            break

    rep.cocommutative = h.coalgebra.is_cocommutative()
    rep.commutative = h.algebra.is_commutative()
    return rep


def dualize_hopf(h: HopfAlgebraData) -> HopfAlgebraData:
    """Transpose all five structure tensors."""
    alg = FinAlgebra(h.field, h.comul.T, h.counit, check=False)
    coalg = FinCoalgebra(h.field, h.mul.T, h.unit, check=False)
    return HopfAlgebraData(alg, coalg, h.antipode.T, check=False)


def group_algebra(g: PermGroup, field: Field) -> HopfAlgebraData:
    """``K[G]`` on the sorted element list of ``g``."""
    elems = g.elements
    d = len(elems)
    idx = {s: i for i, s in enumerate(elems)}
    mul_cols = []
    for a in elems:
        for b in elems:
            mul_cols.append(unit_vector(d, idx[compose(a, b)]))
    mul = Matrix.from_columns(field, mul_cols, d)
    unit = unit_vector(d, idx[g.identity])
    comul = Matrix.from_columns(field, [unit_vector(d * d, i * d + i) for i in range(d)], d * d)
    counit = (1,) * d
    s = Matrix.permutation(field, [idx[inverse(a)] for a in elems])
    h = HopfAlgebraData(
        FinAlgebra(field, mul, unit, check=False),
        FinCoalgebra(field, comul, counit, check=False),
        s,
        check=False,
    )
    return h


def trivial_hopf(field: Field) -> HopfAlgebraData:
    one = Matrix(field, [[1]], 1)
    return HopfAlgebraData(FinAlgebra(field, one, (1,)), FinCoalgebra(field, one, (1,)), one)


def group_elements_span(g: PermGroup, sub: PermGroup, field: Field) -> Subspace:
    """``K[sub]`` as a subspace of ``K[g]``."""
    d = g.order
    return Subspace.span(field, d, [unit_vector(d, g.index(s)) for s in sub.elements])


# ---------------------------------------------------------------------------
# grouplikes
# ---------------------------------------------------------------------------


def _restrict_operator(op: Matrix, sub: Subspace) -> Matrix:
    cols = [sub.coords(op.apply(b)) for b in sub.basis]
    return Matrix.from_columns(op.field, cols, sub.dim)


def _lift(sub: Subspace, coords: Sequence) -> tuple:
    n = sub.n
    acc = [0] * n
    for c, b in zip(coords, sub.basis):
        if c:
            for i, x in enumerate(b):
                if x:
                    acc[i] += c * x
    return _vec_reduce(sub.field, acc)


def _multiplicity(f: Field, poly: Sequence, lam) -> int:
    m = 0
    cur = list(poly)
    while True:
        q, r = pdivmod(f, cur, [f.reduce(-lam), 1])
        if r:
            return m
        m += 1
        cur = q


def grouplikes(c: FinCoalgebra, strict: bool = False) -> list[tuple]:
    """Grouplike elements of ``c`` that are rational over the base field.

    They are the characters of the commutative algebra ``C*``: common
    eigenvectors of the transposed multiplication operators, found by splitting
    eigenspaces one operator at a time.  Parts whose eigenvalues do not lie in
    the base field are dropped; with ``strict`` they raise
    :class:`NonSplitError` instead.
    """
    f = c.field
    d = c.dim
    dual = dualize_coalgebra(c)
    if not dual.is_commutative():
        raise PreconditionError("grouplike extraction needs a commutative dual algebra")
    # transpose of left multiplication by f_a in C*, acting on coordinates in C
    ops = [dual.left_mult(unit_vector(d, a)).T for a in range(d)]
    spaces = [Subspace.full(f, d)]
    for op in ops:
        nxt = []
        for v in spaces:
            # eigenspaces of commuting operators are invariant, so lines stay put
            if v.dim == 1:
                nxt.append(v)
                continue
            r = _restrict_operator(op, v)
            cp = charpoly(r)
            split = 0
            for lam in roots(f, cp):
                split += _multiplicity(f, cp, lam)
                ker = (r - Matrix.identity(f, v.dim).scale(lam)).kernel()
                nxt.append(Subspace.span(f, d, [_lift(v, k) for k in ker.basis]))
            if strict and split < v.dim:
                raise NonSplitError(
                    "non-split over K: characteristic polynomial has irreducible factors of degree > 1",
                    subspace=[[f.fmt(x) for x in b] for b in v.basis],
                )
        spaces = nxt
    out = []
    for v in spaces:
        if v.dim != 1:
            raise InvariantViolation("grouplikes", "common eigenspace of dimension > 1")
        b = v.basis[0]
        e = c.eps(b)
        if not e:
            continue
        x = _vec_reduce(f, [a * f.inv(e) for a in b])
        if c.is_grouplike(x):
            out.append(x)
    return sorted(out)


# ---------------------------------------------------------------------------
# sub-objects: ideals, coideals, subalgebras
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassifiedSubspace:
    space: Subspace
    left_ideal: bool
    right_ideal: bool
    two_sided_coideal: bool
    hopf_ideal: bool
    subalgebra: bool
    subcoalgebra: bool
    hopf_subalgebra: bool
    normal_hopf_subalgebra: bool

    @property
    def left_ideal_coideal(self) -> bool:
        return self.left_ideal and self.two_sided_coideal

    def flags(self) -> dict:
        return {
            "left_ideal": self.left_ideal,
            "right_ideal": self.right_ideal,
            "two_sided_coideal": self.two_sided_coideal,
            "hopf_ideal": self.hopf_ideal,
            "subalgebra": self.subalgebra,
            "subcoalgebra": self.subcoalgebra,
            "hopf_subalgebra": self.hopf_subalgebra,
            "normal_hopf_subalgebra": self.normal_hopf_subalgebra,
        }


def _check_ambient(h: HopfAlgebraData, s: Subspace):
    check_same_field(h.field, s.field)
    if s.n != h.dim:
        raise DimensionError(f"subspace of dimension-{s.n} space given for a dimension-{h.dim} Hopf algebra")


def is_coideal(h: HopfAlgebraData, s: Subspace) -> bool:
    """``Delta(s) in H (x) s + s (x) H`` and ``eps(s) = 0``."""
    if any(h.eps(b) for b in s.basis):
        return False
    q = s.quotient_matrix()
    if q.nrows == 0:
        return True
    qq = kron(q, q)
    return all(not any(qq.apply(h.delta(b))) for b in s.basis)


def classify_subspace(h: HopfAlgebraData, s: Subspace) -> ClassifiedSubspace:
    _check_ambient(h, s)
    d = h.dim
    e = h.basis()
    prod = h.product
    left = all(s.contains_vector(prod(e[i], b)) for i in range(d) for b in s.basis)
    right = all(s.contains_vector(prod(b, e[i])) for i in range(d) for b in s.basis)
    coideal = is_coideal(h, s)
    s_stable = all(s.contains_vector(h.S(b)) for b in s.basis)
    hopf_ideal = left and right and coideal and s_stable

    subalg = s.contains_vector(h.unit) and all(s.contains_vector(prod(a, b)) for a in s.basis for b in s.basis)
    q = s.quotient_matrix()
    if q.nrows == 0:
        subcoalg = True
    else:
        ident = Matrix.identity(h.field, d)
        ql, qr = kron(q, ident), kron(ident, q)
        subcoalg = all(not any(ql.apply(h.delta(b))) and not any(qr.apply(h.delta(b))) for b in s.basis)
    hopf_sub = subalg and subcoalg and s_stable
    normal = False
    if hopf_sub:
        normal = True
        for k in range(d):
            dk = h.comul.column(k)
            terms = [(ab // d, ab % d, c) for ab, c in enumerate(dk) if c]
            for x in s.basis:
                ad_l = [0] * d
                ad_r = [0] * d
                for a, b, c in terms:
                    u = prod(prod(e[a], x), h.S(e[b]))
                    v = prod(prod(h.S(e[a]), x), e[b])
                    for r in range(d):
                        ad_l[r] += c * u[r]
                        ad_r[r] += c * v[r]
                if not s.contains_vector(_vec_reduce(h.field, ad_l)) or not s.contains_vector(_vec_reduce(h.field, ad_r)):
                    normal = False
                    break
            if not normal:
                break
    return ClassifiedSubspace(s, left, right, coideal, hopf_ideal, subalg, subcoalg, hopf_sub, normal)


def unit_span(h: HopfAlgebraData) -> Subspace:
    return Subspace.span(h.field, h.dim, [h.unit])


def newman_schneider(h: HopfAlgebraData, x: Subspace, dir: str, *, check: bool = True) -> Subspace:
    """``phi(I)`` = left ``H/I``-coinvariants of ``H``; ``psi(A) = H A^+``."""
    _check_ambient(h, x)
    if check and not h.coalgebra.is_cocommutative():
        raise PreconditionError("the Newman-Schneider correspondence needs a cocommutative Hopf algebra")
    if dir == "phi":
        if check:
            c = classify_subspace(h, x)
            if not c.left_ideal_coideal:
                raise PreconditionError("phi needs a left ideal two-sided coideal")
        return coinvariants(h, x)
    if dir == "psi":
        if check and not classify_subspace(h, x).hopf_subalgebra:
            raise PreconditionError("psi needs a Hopf subalgebra")
        return ideal_generated_by_augmentation(h, x)
    raise PreconditionError(f"unknown direction {dir!r}")


def coinvariants(h: HopfAlgebraData, i: Subspace) -> Subspace:
    """Kernel of ``h -> (pi (x) id) Delta(h) - pi(1) (x) h``."""
    d = h.dim
    q = i.quotient_matrix()
    if q.nrows == 0:
        return Subspace.full(h.field, d)
    ident = Matrix.identity(h.field, d)
    lhs = kron(q, ident) @ h.comul
    pi1 = Matrix.from_columns(h.field, [q.apply(h.unit)], q.nrows)
    rhs = kron(pi1, ident)
    return (lhs - rhs).kernel()


def ideal_generated_by_augmentation(h: HopfAlgebraData, a: Subspace) -> Subspace:
    """``H A^+`` with ``A^+ = A cap ker(eps)``."""
    plus = a.intersect(h.augmentation_ideal)
    e = h.basis()
    return Subspace.span(h.field, h.dim, [h.product(e[i], b) for i in range(h.dim) for b in plus.basis])


# ---------------------------------------------------------------------------
# quotients
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuotientStructure:
    level: str
    projection: Matrix
    section: Matrix
    coalgebra: FinCoalgebra
    module_action: Matrix | None
    hopf: HopfAlgebraData | None


def quotient_structure(h: HopfAlgebraData, i: Subspace, level: str) -> QuotientStructure:
    """Induced structure on ``H/I`` in the basis of the classes of the non-pivot unit vectors."""
    cls = classify_subspace(h, i)
    need = {
        "coalgebra": cls.two_sided_coideal,
        "module_coalgebra": cls.left_ideal_coideal,
        "hopf": cls.hopf_ideal,
    }
    if level not in need:
        raise PreconditionError(f"unknown quotient level {level!r}")
    if not need[level]:
        raise PreconditionError(f"subspace does not support a {level} quotient")
    f = h.field
    q = i.quotient_matrix()
    r = q.nrows
    sec = Matrix.from_columns(f, i.quotient_reps(), h.dim) if r else Matrix.zeros(f, h.dim, 0)
    comul = kron(q, q) @ h.comul @ sec
    counit = (Matrix(f, [h.counit], h.dim, reduced=True) @ sec).rows[0]
    coalg = FinCoalgebra(f, comul, counit)
    action = None
    hq = None
    if level in ("module_coalgebra", "hopf"):
        action = q @ h.mul @ kron(Matrix.identity(f, h.dim), sec)
    if level == "hopf":
        mul = q @ h.mul @ kron(sec, sec)
        alg = FinAlgebra(f, mul, q.apply(h.unit))
        hq = HopfAlgebraData(alg, coalg, q @ h.antipode @ sec)
    return QuotientStructure(level, q, sec, coalg, action, hq)


def group_quotient_check(g: PermGroup, n: PermGroup, field: Field) -> bool:
    """For ``N`` normal in ``G``: ``K[G]/psi(K[N])`` is ``K[G/N]`` and ``psi(K[N])`` is spanned by ``gn - gn'``."""
    from .perm import closure

    h = group_algebra(g, field)
    a = group_elements_span(g, n, field)
    ideal = ideal_generated_by_augmentation(h, a)
    d = g.order
    diffs = []
    for x in g.elements:
        for y in n.elements:
            v = [0] * d
            v[g.index(compose(x, y))] += 1
            v[g.index(x)] -= 1
            diffs.append(_vec_reduce(field, v))
    if Subspace.span(field, d, diffs) != ideal:
        return False
    qs = quotient_structure(h, ideal, "hopf")
    # quotient group acting on cosets gN, basis ordered by minimal coset element
    cosets = sorted({tuple(sorted(compose(x, y) for y in n.elements)) for x in g.elements})
    where = {x: k for k, c in enumerate(cosets) for x in c}
    lam = [tuple(where[compose(x, c[0])] for c in cosets) for x in g.gens or g.elements]
    quot = closure(len(cosets), lam)
    target = group_algebra(quot, field)
    # images of coset representatives are grouplikes forming a basis
    cols = []
    for p in quot.elements:
        rep = next(x for x in g.elements if tuple(where[compose(x, c[0])] for c in cosets) == p)
        cols.append(qs.projection.apply(unit_vector(d, g.index(rep))))
    p_mat = Matrix.from_columns(field, cols, len(cosets))
    if not p_mat.is_invertible():
        return False
    return qs.hopf.change_basis(p_mat) == target
