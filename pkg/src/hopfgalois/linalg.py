"""Exact dense linear algebra over the rationals and prime fields.

Scalars are stored as plain Python numbers: residues modulo ``p`` are ``int``
in ``range(p)``; rationals are ``int`` or ``fractions.Fraction`` (always in
lowest terms, ints whenever the denominator is 1).  The field descriptor is
carried by every container so that nothing mixes fields silently.

Tensor index convention, fixed everywhere: the basis vector ``e_i (x) e_j`` of
``A (x) B`` has index ``i * dim(B) + j``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import DimensionError, FieldMismatchError, InputError

Vector = tuple

TENSOR_INDEX_CONVENTION = "row-major: index(i, j) = i * dim_b + j"


# ---------------------------------------------------------------------------
# fields
# ---------------------------------------------------------------------------


class Field:
    """Descriptor for the base field of every container."""

    char: int
    name: str

    def reduce(self, x):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def div(self, a, b):
        return self.reduce(a * self.inv(b))

    def parse(self, text):
        raise NotImplementedError

    def fmt(self, x) -> str:
        return str(x)

    @property
    def is_finite(self) -> bool:
        return self.char != 0

    def __repr__(self) -> str:
        return self.name


class RationalField(Field):
    char = 0
    name = "Q"

    def reduce(self, x):
        t = type(x)
        if t is int:
            return x
        if t is Fraction:
            return x.numerator if x.denominator == 1 else x
        if isinstance(x, bool):
            return int(x)
        if isinstance(x, int):
            return int(x)
        if isinstance(x, Fraction):
            return self.reduce(Fraction(x))
        raise TypeError(f"not an exact rational: {x!r}")

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.reduce(Fraction(1) / x)

    def parse(self, text):
        if isinstance(text, bool):
            raise InputError(f"invalid rational {text!r}")
        if isinstance(text, int):
            return text
        if not isinstance(text, str):
            raise InputError(f"rational scalars must be strings or ints, got {text!r}")
        try:
            return self.reduce(Fraction(text.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"invalid rational {text!r}") from exc

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __reduce__(self):
        return (_rationals, ())


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class PrimeField(Field):
    def __init__(self, p: int):
        if not isinstance(p, int) or not _is_prime(p):
            raise InputError(f"{p!r} is not a prime")
        if p >= 2**31:
            raise InputError(f"prime {p} exceeds the supported bound 2^31")
        self.char = p
        self.p = p
        self.name = f"GF({p})"

    def reduce(self, x):
        if type(x) is int:
            return x % self.p
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, int):
            return int(x) % self.p
        raise TypeError(f"not a residue: {x!r}")

    def inv(self, x):
        x %= self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def parse(self, text):
        if isinstance(text, bool):
            raise InputError(f"invalid residue {text!r}")
        if isinstance(text, int):
            return text % self.p
        if not isinstance(text, str):
            raise InputError(f"residues must be strings or ints, got {text!r}")
        try:
            return int(text.strip()) % self.p
        except ValueError as exc:
            raise InputError(f"invalid residue {text!r} for {self.name}") from exc

    def elements(self) -> range:
        return range(self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __reduce__(self):
        return (GF, (self.p,))


QQ = RationalField()


def _rationals():
    return QQ


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_name(name: str) -> Field:
    """Parse ``"Q"`` or ``"GF(p)"``."""
    text = name.strip()
    if text in ("Q", "QQ"):
        return QQ
    if text.startswith("GF(") and text.endswith(")"):
        try:
            return GF(int(text[3:-1]))
        except ValueError as exc:
            raise InputError(f"invalid field descriptor {name!r}") from exc
    raise InputError(f"unknown field descriptor {name!r}")


def check_same_field(*fields: Field) -> Field:
    first = fields[0]
    for f in fields[1:]:
        if f != first:
            raise FieldMismatchError(f"field mismatch: {first} vs {f}")
    return first


# ---------------------------------------------------------------------------
# vectors
# ---------------------------------------------------------------------------


def zero_vector(n: int) -> Vector:
    return (0,) * n


def unit_vector(n: int, i: int) -> Vector:
    v = [0] * n
    v[i] = 1
    return tuple(v)


def vec_add(field: Field, u: Sequence, v: Sequence) -> Vector:
    r = field.reduce
    return tuple(r(a + b) for a, b in zip(u, v))


def vec_sub(field: Field, u: Sequence, v: Sequence) -> Vector:
    r = field.reduce
    return tuple(r(a - b) for a, b in zip(u, v))


def vec_scale(field: Field, c, u: Sequence) -> Vector:
    r = field.reduce
    return tuple(r(c * a) for a in u)


def lin_comb(field: Field, coeffs: Iterable, vectors: Sequence[Sequence], n: int) -> Vector:
    acc = [0] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for i, a in enumerate(v):
                if a:
                    acc[i] += c * a
    r = field.reduce
    return tuple(r(a) for a in acc)


def is_zero(v: Sequence) -> bool:
    return not any(v)


def tensor_vectors(u: Sequence, v: Sequence) -> Vector:
    """``u (x) v`` under the fixed index convention (unreduced products)."""
    return tuple(a * b for a in u for b in v)


# ---------------------------------------------------------------------------
# row reduction core
# ---------------------------------------------------------------------------


def _rref_inplace(rows: list[list], ncols: int, field: Field, search_cols: int | None = None) -> list[int]:
    """Reduce ``rows`` to reduced row-echelon form in place; return pivot columns.

    Pivot choice: leftmost column with a nonzero entry at or below the current
    row, topmost such row.  Only the first ``search_cols`` columns may hold
    pivots (used for augmented systems).
    """
    if search_cols is None:
        search_cols = ncols
    p = field.char
    nrows = len(rows)
    pivots: list[int] = []
    r = 0
    for c in range(search_cols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        lead = prow[c]
        if lead != 1:
            inv = field.inv(lead)
            if p:
                prow = [(a * inv) % p for a in prow]
            else:
                prow = [a * inv for a in prow]
            rows[r] = prow
        if p:
            for i in range(nrows):
                if i != r:
                    row = rows[i]
                    f = row[c]
                    if f:
                        rows[i] = [(a - f * b) % p for a, b in zip(row, prow)]
        else:
            for i in range(nrows):
                if i != r:
                    row = rows[i]
                    f = row[c]
                    if f:
                        rows[i] = [a - f * b if b else a for a, b in zip(row, prow)]
        pivots.append(c)
        r += 1
    if not p:
        red = field.reduce
        for i in range(nrows):
            rows[i] = [red(a) for a in rows[i]]
    return pivots


def _canonical_rows(field: Field, n: int, vectors: Iterable[Sequence]) -> tuple[tuple[tuple, ...], tuple[int, ...]]:
    rows = []
    for v in vectors:
        if len(v) != n:
            raise DimensionError(f"vector of length {len(v)} in ambient dimension {n}")
        if any(v):
            rows.append(list(v))
    if not rows:
        return (), ()
    pivots = _rref_inplace(rows, n, field)
    return tuple(tuple(rows[i]) for i in range(len(pivots))), tuple(pivots)


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------


class Matrix:
    """Dense immutable matrix over a :class:`Field`, stored row-major."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: Field, rows: Iterable[Iterable], ncols: int | None = None, *, reduced: bool = False):
        if reduced:
            data = tuple(tuple(r) for r in rows)
        else:
            red = field.reduce
            data = tuple(tuple(red(x) for x in r) for r in rows)
        if ncols is None:
            if not data:
                raise DimensionError("ncols required for a matrix with no rows")
            ncols = len(data[0])
        for r in data:
            if len(r) != ncols:
                raise DimensionError("ragged matrix rows")
        self.field = field
        self.nrows = len(data)
        self.ncols = ncols
        self.rows = data

    # construction -------------------------------------------------------
    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, (unit_vector(n, i) for i in range(n)), n, reduced=True)

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        return cls(field, ((0,) * ncols for _ in range(nrows)), ncols, reduced=True)

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence], nrows: int | None = None) -> "Matrix":
        cols = [tuple(c) for c in columns]
        if nrows is None:
            if not cols:
                raise DimensionError("nrows required for a matrix with no columns")
            nrows = len(cols[0])
        return cls(field, (tuple(c[i] for c in cols) for i in range(nrows)), len(cols))

    @classmethod
    def permutation(cls, field: Field, images: Sequence[int]) -> "Matrix":
        """Matrix sending ``e_j`` to ``e_{images[j]}``."""
        n = len(images)
        rows = [[0] * n for _ in range(n)]
        for j, i in enumerate(images):
            rows[i][j] = 1
        return cls(field, rows, n, reduced=True)

    # access -------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[Vector]:
        return [tuple(c) for c in zip(*self.rows)] if self.nrows else [()] * self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.field, self.nrows, self.ncols, self.rows))

    def __repr__(self):
        body = "; ".join(" ".join(self.field.fmt(x) for x in r) for r in self.rows)
        return f"Matrix[{self.field}]({self.nrows}x{self.ncols}: {body})"

    def to_lists(self) -> list[list[str]]:
        fmt = self.field.fmt
        return [[fmt(x) for x in r] for r in self.rows]

    # arithmetic ---------------------------------------------------------
    def _check(self, other: "Matrix"):
        check_same_field(self.field, other.field)

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, self.columns(), self.nrows, reduced=True)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise DimensionError("shape mismatch in addition")
        return Matrix(self.field, (tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)), self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise DimensionError("shape mismatch in subtraction")
        return Matrix(self.field, (tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)), self.ncols)

    def scale(self, c) -> "Matrix":
        return Matrix(self.field, (tuple(c * a for a in r) for r in self.rows), self.ncols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        brows = other.rows
        n = other.ncols
        out = []
        for row in self.rows:
            acc = [0] * n
            for k, a in enumerate(row):
                if a:
                    b = brows[k]
                    acc = [x + a * y if y else x for x, y in zip(acc, b)]
            out.append(acc)
        return Matrix(self.field, out, n)

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.ncols:
            raise DimensionError(f"vector of length {len(v)} for a {self.shape} matrix")
        red = self.field.reduce
        nz = [(k, a) for k, a in enumerate(v) if a]
        return tuple(red(sum(row[k] * a for k, a in nz)) for row in self.rows)

    def kron(self, other: "Matrix") -> "Matrix":
        return kron(self, other)

    def hstack(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.nrows != other.nrows:
            raise DimensionError("row count mismatch in hstack")
        return Matrix(self.field, (r + s for r, s in zip(self.rows, other.rows)), self.ncols + other.ncols, reduced=True)

    def vstack(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.ncols != other.ncols:
            raise DimensionError("column count mismatch in vstack")
        return Matrix(self.field, self.rows + other.rows, self.ncols, reduced=True)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix(self.field, (tuple(self.rows[i][j] for j in cols) for i in rows), len(cols), reduced=True)

    # linear algebra -----------------------------------------------------
    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        rows = [list(r) for r in self.rows]
        piv = _rref_inplace(rows, self.ncols, self.field)
        return Matrix(self.field, rows, self.ncols, reduced=True), tuple(piv)

    def rank(self) -> int:
        if self.nrows == 0 or self.ncols == 0:
            return 0
        rows = [list(r) for r in self.rows if any(r)]
        if not rows:
            return 0
        return len(_rref_inplace(rows, self.ncols, self.field))

    def kernel(self) -> "Subspace":
        return rref_solve(self).kernel

    def image(self) -> "Subspace":
        """Column space as a subspace of the codomain."""
        return Subspace.span(self.field, self.nrows, self.columns())

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows

    def inverse(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise DimensionError("inverse of a non-square matrix")
        n = self.nrows
        rows = [list(r) + list(unit_vector(n, i)) for i, r in enumerate(self.rows)]
        piv = _rref_inplace(rows, 2 * n, self.field, search_cols=n)
        if len(piv) != n:
            raise InputError("matrix is singular")
        return Matrix(self.field, (r[n:] for r in rows), n, reduced=True)


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product with ``index(i, j) = i * dim_b + j`` on rows and columns."""
    check_same_field(a.field, b.field)
    rows = []
    for ra in a.rows:
        for rb in b.rows:
            rows.append(tuple(x * y for x in ra for y in rb))
    return Matrix(a.field, rows, a.ncols * b.ncols)


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------


class Subspace:
    """A subspace of ``field^n`` held as its unique RREF basis (no zero rows)."""

    __slots__ = ("field", "n", "basis", "pivots")

    def __init__(self, field: Field, n: int, basis: tuple, pivots: tuple):
        self.field = field
        self.n = n
        self.basis = basis
        self.pivots = pivots

    @classmethod
    def span(cls, field: Field, n: int, vectors: Iterable[Sequence]) -> "Subspace":
        basis, pivots = _canonical_rows(field, n, vectors)
        return cls(field, n, basis, pivots)

    @classmethod
    def zero(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n, (), ())

    @classmethod
    def full(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n, tuple(unit_vector(n, i) for i in range(n)), tuple(range(n)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.field == other.field and self.n == other.n and self.basis == other.basis

    def __hash__(self):
        return hash((self.field, self.n, self.basis))

    def __repr__(self):
        rows = ", ".join("(" + " ".join(self.field.fmt(x) for x in b) + ")" for b in self.basis)
        return f"Subspace[{self.field}^{self.n}, dim {self.dim}]{{{rows}}}"

    def _compat(self, other: "Subspace"):
        check_same_field(self.field, other.field)
        if self.n != other.n:
            raise DimensionError(f"ambient dimensions differ: {self.n} vs {other.n}")

    def residual(self, v: Sequence) -> Vector:
        """``v`` minus its component along the pivot coordinates of the basis."""
        if len(v) != self.n:
            raise DimensionError(f"vector of length {len(v)} in ambient dimension {self.n}")
        if not self.basis:
            return tuple(v)
        acc = list(v)
        for p, b in zip(self.pivots, self.basis):
            c = acc[p]
            if c:
                for i, x in enumerate(b):
                    if x:
                        acc[i] -= c * x
        red = self.field.reduce
        return tuple(red(a) for a in acc)

    def contains_vector(self, v: Sequence) -> bool:
        return not any(self.residual(v))

    __contains__ = contains_vector

    def coords(self, v: Sequence) -> Vector:
        """Coordinates of ``v`` in the canonical basis; raises if ``v`` is outside."""
        if not self.contains_vector(v):
            raise InputError("vector is not in the subspace")
        red = self.field.reduce
        return tuple(red(v[p]) for p in self.pivots)

    def contains(self, other: "Subspace") -> bool:
        self._compat(other)
        return all(self.contains_vector(b) for b in other.basis)

    def __le__(self, other: "Subspace") -> bool:
        return other.contains(self)

    def __ge__(self, other: "Subspace") -> bool:
        return self.contains(other)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._compat(other)
        return Subspace.span(self.field, self.n, self.basis + other.basis)

    def __and__(self, other: "Subspace") -> "Subspace":
        return self.intersect(other)

    def intersect(self, other: "Subspace") -> "Subspace":
        """Intersection via the kernel of the residual map of ``self``'s basis modulo ``other``."""
        self._compat(other)
        if not self.basis or not other.basis:
            return Subspace.zero(self.field, self.n)
        res = [other.residual(b) for b in self.basis]
        ker = Matrix.from_columns(self.field, res, self.n).kernel()
        return Subspace.span(self.field, self.n, (lin_comb(self.field, k, self.basis, self.n) for k in ker.basis))

    def non_pivots(self) -> tuple[int, ...]:
        ps = set(self.pivots)
        return tuple(i for i in range(self.n) if i not in ps)

    def quotient_reps(self) -> list[Vector]:
        """Standard basis vectors at non-pivot columns, in increasing order."""
        return [unit_vector(self.n, i) for i in self.non_pivots()]

    def quotient_matrix(self) -> Matrix:
        """Projection ``field^n -> field^n / self`` in the basis of classes of :meth:`quotient_reps`."""
        npv = self.non_pivots()
        cols = []
        for j in range(self.n):
            r = self.residual(unit_vector(self.n, j))
            cols.append(tuple(r[i] for i in npv))
        return Matrix.from_columns(self.field, cols, len(npv))

    def matrix(self) -> Matrix:
        return Matrix(self.field, self.basis, self.n, reduced=True)

    def image(self, m: Matrix) -> "Subspace":
        check_same_field(self.field, m.field)
        if m.ncols != self.n:
            raise DimensionError("matrix does not act on this ambient space")
        return Subspace.span(self.field, m.nrows, (m.apply(b) for b in self.basis))

    def preimage(self, m: Matrix) -> "Subspace":
        """``{x : m x in self}``."""
        check_same_field(self.field, m.field)
        if m.nrows != self.n:
            raise DimensionError("matrix does not map into this ambient space")
        q = self.quotient_matrix()
        return (q @ m).kernel() if q.nrows else Subspace.full(self.field, m.ncols)

    def is_canonical(self) -> bool:
        basis, pivots = _canonical_rows(self.field, self.n, self.basis)
        return basis == self.basis and pivots == self.pivots


def subspace_ops(a: Subspace, b: Subspace, op: str):
    """Dispatch for the lattice operations: ``sum``, ``intersect``, ``contains``, ``quotient_reps``."""
    a._compat(b)
    if op == "sum":
        return a + b
    if op == "intersect":
        return a.intersect(b)
    if op == "contains":
        return a.contains(b)
    if op == "quotient_reps":
        return a.quotient_reps()
    raise InputError(f"unknown subspace operation {op!r}")


# ---------------------------------------------------------------------------
# solving
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SolveResult:
    rref: Matrix
    rank: int
    kernel: Subspace
    solution: Matrix | None
    pivots: tuple[int, ...]


def rref_solve(m: Matrix, rhs: Matrix | None = None) -> SolveResult:
    """Canonical RREF of ``m``, its rank and kernel, and a particular solution of ``m x = rhs``.

    Free variables are set to zero in the particular solution.
    """
    if m.nrows == 0 or m.ncols == 0:
        raise DimensionError("rref_solve needs a nonempty matrix")
    n = m.ncols
    if rhs is not None:
        check_same_field(m.field, rhs.field)
        if rhs.nrows != m.nrows:
            raise DimensionError("rhs row count does not match")
        rows = [list(a) + list(b) for a, b in zip(m.rows, rhs.rows)]
        width = n + rhs.ncols
    else:
        rows = [list(a) for a in m.rows]
        width = n
    pivots = _rref_inplace(rows, width, m.field, search_cols=n)
    rank = len(pivots)
    rref = Matrix(m.field, (r[:n] for r in rows), n, reduced=True)

    pset = set(pivots)
    kvecs = []
    for f in range(n):
        if f in pset:
            continue
        v = [0] * n
        v[f] = 1
        for r, c in enumerate(pivots):
            v[c] = -rows[r][f]
        kvecs.append(tuple(m.field.reduce(x) for x in v))
    kernel = Subspace.span(m.field, n, kvecs)

    solution = None
    if rhs is not None:
        consistent = all(not any(rows[r][n:]) for r in range(rank, m.nrows))
        if consistent:
            k = rhs.ncols
            sol = [[0] * k for _ in range(n)]
            for r, c in enumerate(pivots):
                sol[c] = rows[r][n:]
            solution = Matrix(m.field, sol, k)
    return SolveResult(rref, rank, kernel, solution, tuple(pivots))


def solve_columns(m: Matrix, targets: Sequence[Sequence]) -> list[Vector] | None:
    """Solve ``m x = t`` for each target column; ``None`` if any is inconsistent."""
    rhs = Matrix.from_columns(m.field, targets, m.nrows)
    res = rref_solve(m, rhs)
    if res.solution is None:
        return None
    return res.solution.columns()


def kernel_of_rows(field: Field, n: int, rows: Iterable[Sequence]) -> Subspace:
    """Kernel of the linear map whose matrix has the given rows (``n`` columns)."""
    data = [tuple(r) for r in rows if any(r)]
    if not data:
        return Subspace.full(field, n)
    return Matrix(field, data, n).kernel()


# ---------------------------------------------------------------------------
# enumeration over finite fields (oracles)
# ---------------------------------------------------------------------------


def all_vectors(field: PrimeField, n: int) -> Iterator[Vector]:
    return itertools.product(range(field.p), repeat=n)


def all_subspaces(field: PrimeField, n: int, max_count: int = 100_000) -> Iterator[Subspace]:
    """Every subspace of ``GF(p)^n``, generated directly as RREF bases."""
    if not field.is_finite:
        raise InputError("subspace enumeration needs a finite field")
    count = 0
    for k in range(n + 1):
        for pivots in itertools.combinations(range(n), k):
            free = []
            for r, pc in enumerate(pivots):
                for c in range(pc + 1, n):
                    if c not in pivots:
                        free.append((r, c))
            for values in itertools.product(range(field.p), repeat=len(free)):
                rows = [[0] * n for _ in range(k)]
                for r, pc in enumerate(pivots):
                    rows[r][pc] = 1
                for (r, c), x in zip(free, values):
                    rows[r][c] = x
                count += 1
                if count > max_count:
                    raise InputError(f"more than {max_count} subspaces")
                yield Subspace(field, n, tuple(tuple(r) for r in rows), pivots)
