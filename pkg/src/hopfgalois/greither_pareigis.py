"""Hopf-Galois structures on separable extensions from regular permutation groups.

Given the normal closure ``Lt`` of ``L/K`` with its automorphism group ``G``
and ``G' = Gal(Lt/L)``, every regular subgroup ``N`` of ``Perm(G/G')``
normalized by the translation image of ``G`` yields the Hopf algebra
``H = Lt[N]^G`` acting on ``L``.

Conventions.  ``N`` acts on cosets from the right by ``c . n = n(c)``, so the
group law of ``N`` used in ``Lt[N]`` is ``n * m = m o n`` (composition read
right to left).  ``G`` acts on ``N`` by conjugation with its translation image.
Vectors of ``Lt[N]`` are indexed by ``k * dim Lt + a`` for the ``k``-th
element of ``N`` (sorted) and the ``a``-th basis vector of ``Lt``.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .action import (
    ModuleAlgebraDatum,
    canonical_map,
    classify_subspace,
    correspondence_lattice,
    fixed_space,
    subextension_flags,
)
from .errors import CorrespondenceError, InvariantViolation, PreconditionError
from .hopf import (
    FinAlgebra,
    FinCoalgebra,
    HopfAlgebraData,
    group_algebra,
    ideal_generated_by_augmentation,
)
from .linalg import Matrix, Subspace, check_same_field, rref_solve, unit_vector
from .perm import (
    CosetDatum,
    GroupAction,
    Perm,
    PermGroup,
    compose,
    conjugation_action,
    coset_datum,
    equivariant_subgroups,
    gp_act_correspondence,
    group_from_table,
    hg_candidates,
    inverse,
    orbit_map,
    right_regular_subgroup,
)


def _red(field, acc) -> tuple:
    r = field.reduce
    return tuple(r(a) for a in acc)


# ---------------------------------------------------------------------------
# splitting data
# ---------------------------------------------------------------------------


class SplittingDatum:
    def __init__(
        self,
        ltilde: FinAlgebra,
        labels: Sequence[str],
        matrices: Sequence[Matrix],
        table: Sequence[Sequence[int]],
        g_prime: Sequence[int],
    ):
        if len(labels) != len(matrices) or len(table) != len(labels):
            raise InvariantViolation("group-table", "labels, matrices and group table sizes differ")
        if len(set(labels)) != len(labels):
            raise InvariantViolation("labels", "automorphism labels repeat")
        for m in matrices:
            check_same_field(ltilde.field, m.field)
        self.field = ltilde.field
        self.ltilde = ltilde
        self.labels = list(labels)
        self.matrices = list(matrices)
        self.table = [list(r) for r in table]
        self.g_prime_idx = sorted(set(g_prime))
        self.group, self.perms = group_from_table(self.table)
        self.mat_of = {p: m for p, m in zip(self.perms, self.matrices)}
        self.label_of = {p: s for p, s in zip(self.perms, self.labels)}
        gp = [self.perms[i] for i in self.g_prime_idx]
        self.g_prime = PermGroup(self.group.degree, gp, gp, check=False)
        if not self.g_prime.is_subgroup_of(self.group) or not _closed(gp):
            raise InvariantViolation("g-prime", "G' is not a subgroup")

    @cached_property
    def cosets(self) -> CosetDatum:
        return coset_datum(self.group, self.g_prime)

    @cached_property
    def l_sub(self) -> Subspace:
        """``L = Lt^{G'}`` inside ``Lt``."""
        f = self.field
        n = self.ltilde.dim
        ident = Matrix.identity(f, n)
        rows = [r for p in self.g_prime.elements for r in (self.mat_of[p] - ident).rows if any(r)]
        return Matrix(f, rows, n, reduced=True).kernel() if rows else Subspace.full(f, n)

    @cached_property
    def l_algebra(self) -> FinAlgebra:
        return self.ltilde.restrict(self.l_sub)

    @cached_property
    def embedding(self) -> Matrix:
        return Matrix.from_columns(self.field, self.l_sub.basis, self.ltilde.dim)

    @cached_property
    def coset_embeddings(self) -> list[Matrix]:
        """``emb_c``: restriction of a representative of coset ``c`` to ``L``."""
        return [self.mat_of[c[0]] @ self.embedding for c in self.cosets.cosets]

    def embed(self, y: Sequence) -> tuple:
        return self.embedding.apply(y)

    def to_l(self, v: Sequence) -> tuple:
        return self.l_sub.coords(v)


def _closed(elems: Sequence[Perm]) -> bool:
    s = set(elems)
    return all(compose(a, b) in s for a in elems for b in elems)


@dataclass
class SplittingReport:
    ok: bool
    failures: list
    dim_l: int
    index: int

    def as_dict(self) -> dict:
        return {"ok": self.ok, "dim_L": self.dim_l, "index": self.index, "failures": [{"invariant": n, "witness": w} for n, w in self.failures]}


def validate_splitting(datum: SplittingDatum, raise_on_failure: bool = True) -> SplittingReport:
    from .finite_fields import is_ring_map

    lt = datum.ltilde
    f = datum.field
    failures = []
    if not lt.is_field():
        failures.append(("closure-is-field", []))
    for i, m in enumerate(datum.matrices):
        if m.shape != (lt.dim, lt.dim) or not m.is_invertible() or not is_ring_map(lt, lt, m):
            failures.append(("automorphism", [datum.labels[i]]))
            break
    if not failures:
        for i in range(len(datum.labels)):
            for j in range(len(datum.labels)):
                if datum.matrices[datum.table[i][j]] != datum.matrices[i] @ datum.matrices[j]:
                    failures.append(("group-table", [datum.labels[i], datum.labels[j]]))
                    break
            if failures:
                break
    if lt.dim != datum.group.order:
        failures.append(("closure-degree", [lt.dim, datum.group.order]))
    if not failures:
        ident = Matrix.identity(f, lt.dim)
        rows = [r for m in datum.matrices for r in (m - ident).rows if any(r)]
        fixed = Matrix(f, rows, lt.dim, reduced=True).kernel() if rows else Subspace.full(f, lt.dim)
        if fixed != Subspace.span(f, lt.dim, [lt.unit]):
            failures.append(("closure-invariants", [fixed.dim]))
    if not failures and datum.l_sub.dim != datum.cosets.index:
        failures.append(("subfield-degree", [datum.l_sub.dim, datum.cosets.index]))
    if not failures:
        # Hom_K(L, Lt) = Lt[G/G'] via l (x) c -> M_l emb_c
        cols = []
        for a in range(lt.dim):
            ma = lt.left_mult(unit_vector(lt.dim, a))
            for emb in datum.coset_embeddings:
                cols.append(tuple(x for row in (ma @ emb).rows for x in row))
        hom = Matrix.from_columns(f, cols, lt.dim * datum.l_sub.dim)
        if hom.rank() != lt.dim * datum.l_sub.dim:
            failures.append(("coset-embeddings", []))
        for c in datum.cosets.cosets:
            base = datum.mat_of[c[0]] @ datum.embedding
            if any(datum.mat_of[x] @ datum.embedding != base for x in c):
                failures.append(("coset-restriction", [datum.label_of[c[0]]]))
                break
    rep = SplittingReport(not failures, failures, datum.l_sub.dim, datum.cosets.index)
    if failures and raise_on_failure:
        name, witness = failures[0]
        raise InvariantViolation(name, f"splitting datum invariant fails: {name}", witness=witness)
    return rep


# ---------------------------------------------------------------------------
# Hopf-Galois structures
# ---------------------------------------------------------------------------


@dataclass
class HGStructure:
    n_grp: PermGroup
    action: GroupAction
    beta: dict
    h_span: Subspace
    hopf: HopfAlgebraData
    module: ModuleAlgebraDatum
    can_rank: int

    @property
    def dim(self) -> int:
        return self.hopf.dim

    def summary(self) -> dict:
        return {
            "N": self.n_grp.to_json(),
            "order": self.n_grp.order,
            "abelian": self.n_grp.is_abelian(),
            "dim_H": self.hopf.dim,
            "can_rank": self.can_rank,
            "hopf_galois": self.can_rank == self.module.dl**2,
        }


def _star(n: Perm, m: Perm) -> Perm:
    """Group law of ``N`` for the right action on cosets."""
    return compose(m, n)


class _GroupRing:
    """``Lt[N]`` as a K-space with the operations needed for descent."""

    def __init__(self, datum: SplittingDatum, n_grp: PermGroup):
        self.datum = datum
        self.n_grp = n_grp
        self.elems = n_grp.elements
        self.idx = {s: i for i, s in enumerate(self.elems)}
        self.dt = datum.ltilde.dim
        self.dim = self.dt * len(self.elems)

    def blocks(self, v: Sequence) -> list[tuple]:
        dt = self.dt
        return [tuple(v[k * dt:(k + 1) * dt]) for k in range(len(self.elems))]

    def product(self, u: Sequence, v: Sequence) -> tuple:
        lt = self.datum.ltilde
        dt = self.dt
        acc = [0] * self.dim
        bu, bv = self.blocks(u), self.blocks(v)
        for i, a in enumerate(bu):
            if not any(a):
                continue
            for j, b in enumerate(bv):
                if not any(b):
                    continue
                k = self.idx[_star(self.elems[i], self.elems[j])]
                ab = lt.product(a, b)
                for t, x in enumerate(ab):
                    if x:
                        acc[k * dt + t] += x
        return _red(self.datum.field, acc)

    def tensor(self, u: Sequence, v: Sequence) -> tuple:
        """``u (x)_Lt v`` in ``Lt[N x N]``, index ``(i * |N| + j) * dim Lt + a``."""
        lt = self.datum.ltilde
        dt = self.dt
        nn = len(self.elems)
        acc = [0] * (self.dim * nn)
        bu, bv = self.blocks(u), self.blocks(v)
        for i, a in enumerate(bu):
            if not any(a):
                continue
            for j, b in enumerate(bv):
                if not any(b):
                    continue
                ab = lt.product(a, b)
                base = (i * nn + j) * dt
                for t, x in enumerate(ab):
                    if x:
                        acc[base + t] += x
        return _red(self.datum.field, acc)

    def diagonal(self, u: Sequence) -> tuple:
        """``Delta(sum c_n n) = sum c_n n (x) n``."""
        dt = self.dt
        nn = len(self.elems)
        out = [0] * (self.dim * nn)
        for i, a in enumerate(self.blocks(u)):
            base = (i * nn + i) * dt
            out[base:base + dt] = a
        return tuple(out)

    def one(self) -> tuple:
        v = [0] * self.dim
        k = self.idx[self.n_grp.identity]
        v[k * self.dt:(k + 1) * self.dt] = self.datum.ltilde.unit
        return tuple(v)

    def augmentation(self, u: Sequence) -> tuple:
        acc = [0] * self.dt
        for b in self.blocks(u):
            acc = [x + y for x, y in zip(acc, b)]
        return _red(self.datum.field, acc)

    def antipode(self, u: Sequence) -> tuple:
        dt = self.dt
        out = [0] * self.dim
        for i, b in enumerate(self.blocks(u)):
            k = self.idx[inverse(self.elems[i])]
            out[k * dt:(k + 1) * dt] = b
        return tuple(out)

    def g_operator(self, g: Perm, act: GroupAction) -> Matrix:
        """Semilinear action ``g(l n) = g(l) (g . n)`` as a K-matrix."""
        dt = self.dt
        mg = self.datum.mat_of[g]
        cols = []
        for n in self.elems:
            k = self.idx[act(g, n)]
            for a in range(dt):
                col = [0] * self.dim
                col[k * dt:(k + 1) * dt] = mg.column(a)
                cols.append(tuple(col))
        return Matrix.from_columns(self.datum.field, cols, self.dim)


def descend_hopf_and_action(datum: SplittingDatum, n_grp: PermGroup) -> HGStructure:
    cd = datum.cosets
    f = datum.field
    if not n_grp.is_regular() or n_grp.degree != cd.index:
        raise PreconditionError("N is not a regular subgroup of Perm(G/G')")
    if not cd.lambda_img.normalizes(n_grp):
        raise PreconditionError("N is not normalized by the translation image of G")
    act = conjugation_action(cd, n_grp)
    act.validate()
    beta = orbit_map(cd, n_grp)
    ring = _GroupRing(datum, n_grp)

    # descent: common kernel of (T_g - I) over generators of G
    ident = Matrix.identity(f, ring.dim)
    gens = datum.group.canonical_gens
    rows = [r for g in gens for r in (ring.g_operator(g, act) - ident).rows if any(r)]
    h_span = Matrix(f, rows, ring.dim, reduced=True).kernel() if rows else Subspace.full(f, ring.dim)
    if h_span.dim != datum.l_sub.dim:
        raise CorrespondenceError("descent dimension differs from [L:K]", got=h_span.dim, expected=datum.l_sub.dim)
    basis = h_span.basis
    dh = len(basis)

    mul_cols = [h_span.coords(ring.product(a, b)) for a in basis for b in basis]
    unit = h_span.coords(ring.one())
    # comultiplication: solve sum X_kl h_k (x) h_l = Delta(h)
    pair_cols = [ring.tensor(a, b) for a in basis for b in basis]
    pair = Matrix.from_columns(f, pair_cols, ring.dim * len(ring.elems))
    targets = Matrix.from_columns(f, [ring.diagonal(b) for b in basis], pair.nrows)
    sol = rref_solve(pair, targets)
    if sol.solution is None or sol.rank != dh * dh:
        raise CorrespondenceError("comultiplication of the descended algebra is not rational over K")
    comul = sol.solution
    one_lt = Subspace.span(f, datum.ltilde.dim, [datum.ltilde.unit])
    counit = []
    for b in basis:
        e = ring.augmentation(b)
        if not one_lt.contains_vector(e):
            raise CorrespondenceError("counit of the descended algebra is not rational over K")
        counit.append(_scalar_multiple(f, e, datum.ltilde.unit))
    s_cols = [h_span.coords(ring.antipode(b)) for b in basis]
    hopf = HopfAlgebraData(
        FinAlgebra(f, Matrix.from_columns(f, mul_cols, dh), unit, check=False),
        FinCoalgebra(f, comul, counit, check=False),
        Matrix.from_columns(f, s_cols, dh),
        check=True,
    )

    # action on L: h . y = sum_n c_n emb_{beta(n)}(y)
    lt = datum.ltilde
    dl = datum.l_sub.dim
    embs = datum.coset_embeddings
    act_cols = []
    for b in basis:
        blocks = ring.blocks(b)
        for y in range(dl):
            acc = [0] * lt.dim
            for k, c in enumerate(blocks):
                if any(c):
                    img = embs[beta[ring.elems[k]]].column(y)
                    acc = [s + t for s, t in zip(acc, lt.product(c, img))]
            v = _red(f, acc)
            if not datum.l_sub.contains_vector(v):
                raise CorrespondenceError("descended action leaves L")
            act_cols.append(datum.to_l(v))
    module = ModuleAlgebraDatum(hopf, datum.l_algebra, Matrix.from_columns(f, act_cols, dl))
    rep = canonical_map(module)
    if not rep.bijective:
        raise CorrespondenceError("canonical map of a Greither-Pareigis structure is not bijective", rank=rep.rank)
    return HGStructure(n_grp, act, beta, h_span, hopf, module, rep.rank)


def _scalar_multiple(f, v: Sequence, unit: Sequence):
    k = next(i for i, x in enumerate(unit) if x)
    return f.reduce(v[k] * f.inv(unit[k]))


def verify_structure(datum: SplittingDatum, s: HGStructure) -> bool:
    """Re-verify the defining properties of an enumerated structure."""
    cd = datum.cosets
    n_grp = s.n_grp
    if sorted(s.beta.values()) != list(range(cd.index)):
        return False
    for n in n_grp.elements:
        for m in n_grp.elements:
            if s.beta[_star(n, m)] != m[s.beta[n]]:
                return False
    for g in datum.group.elements:
        la = cd.lam[g]
        for c in range(cd.index):
            for n in n_grp.elements:
                if la[n[c]] != s.action(g, n)[la[c]]:
                    return False
    from .perm import conjugate

    if not all(conjugate(a, x) in n_grp for a in cd.lambda_img.elements for x in n_grp.elements):
        return False
    return canonical_map(s.module).bijective


def _descend_worker(args):
    datum, n_grp = args
    return descend_hopf_and_action(datum, n_grp)


def enumerate_structures(datum: SplittingDatum, jobs: int = 1) -> list[HGStructure]:
    validate_splitting(datum)
    cands = hg_candidates(datum.group, datum.g_prime)
    if jobs > 1 and len(cands) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(_descend_worker, [(datum, n) for n in cands]))
    return [descend_hopf_and_action(datum, n) for n in cands]


def classical_structure(datum: SplittingDatum) -> HGStructure:
    """The structure from the centralizer of the translation image (requires ``G' = 1``)."""
    if datum.g_prime.order != 1:
        raise PreconditionError("the classical structure is built here for G' = 1 only")
    return descend_hopf_and_action(datum, right_regular_subgroup(datum.cosets))


def classical_matches_group_algebra(datum: SplittingDatum, s: HGStructure) -> bool:
    """Under ``n -> beta(n)``, ``H`` equals ``K[G]`` tensor for tensor."""
    g = datum.group
    d = g.order
    if s.hopf.dim != d:
        return False
    # each basis vector of H must be a single group element with coefficient 1
    cols = [None] * d
    unit = datum.ltilde.unit
    dt = datum.ltilde.dim
    for k, b in enumerate(s.h_span.basis):
        blocks = [i for i in range(d) if any(b[i * dt:(i + 1) * dt])]
        if len(blocks) != 1 or tuple(b[blocks[0] * dt:(blocks[0] + 1) * dt]) != unit:
            return False
        n = s.n_grp.elements[blocks[0]]
        # coset beta(n) is the singleton {G.elements[j]} when G' = 1
        j = g.index(datum.cosets.cosets[s.beta[n]][0])
        if cols[j] is not None:
            return False
        cols[j] = unit_vector(d, k)
    p = Matrix.from_columns(datum.field, cols, d)
    return s.hopf.change_basis(p) == group_algebra(g, datum.field)


# ---------------------------------------------------------------------------
# group side of the correspondence
# ---------------------------------------------------------------------------


@dataclass
class GroupSideRow:
    v: PermGroup
    u: PermGroup
    normal: bool
    ideal: Subspace
    field: Subspace
    hopf_subalgebra: Subspace
    hopf_ideal: bool
    h_normal: bool
    quotient_size: int


def quotient_kernel(ring: _GroupRing, v: PermGroup) -> Subspace:
    """Kernel of ``Lt[N] -> Lt[N/V]`` with cosets ``n * V``."""
    dt = ring.dt
    gens = []
    for n in ring.elems:
        for w in v.elements:
            k1 = ring.idx[_star(n, w)]
            k0 = ring.idx[n]
            if k1 == k0:
                continue
            for a in range(dt):
                vec = [0] * ring.dim
                vec[k1 * dt + a] += 1
                vec[k0 * dt + a] -= 1
                gens.append(tuple(vec))
    return Subspace.span(ring.datum.field, ring.dim, gens)


def group_side_correspondence(s: HGStructure, datum: SplittingDatum) -> list[GroupSideRow]:
    cd = datum.cosets
    f = datum.field
    ring = _GroupRing(datum, s.n_grp)
    d = s.module
    lt = datum.ltilde
    out = []
    for v in equivariant_subgroups(s.action):
        res = gp_act_correspondence(datum.group, datum.g_prime, s.n_grp, s.action, s.beta, v, cd)
        if not res.iso_check:
            raise CorrespondenceError("N/V -> G/U is not a bijection")
        u = res.u
        if not datum.g_prime.is_subgroup_of(u):
            raise CorrespondenceError("G' is not contained in U")
        if s.n_grp.order // v.order != datum.group.order // u.order:
            raise CorrespondenceError("|N/V| != |G/U|")
        # L^U = L cap Lt^U
        ident = Matrix.identity(f, lt.dim)
        rows = [r for g in u.elements for r in (datum.mat_of[g] - ident).rows if any(r)]
        lt_u = Matrix(f, rows, lt.dim, reduced=True).kernel() if rows else Subspace.full(f, lt.dim)
        l_u_big = lt_u.intersect(datum.l_sub)
        l_u = Subspace.span(f, d.dl, [datum.to_l(x) for x in l_u_big.basis])
        # I = (kernel of Lt[N] -> Lt[N/V]) cap H, in H coordinates
        ker = quotient_kernel(ring, v)
        big = ker.intersect(s.h_span)
        ideal = Subspace.span(f, d.dh, [s.h_span.coords(x) for x in big.basis])
        if ideal.dim != d.dh - d.dh // v.order:
            raise CorrespondenceError("ideal of a V has the wrong dimension")
        # cross-check: I = H (Lt[V]^G)^+
        lt_v = Subspace.span(f, ring.dim, [unit_vector(ring.dim, ring.idx[w] * ring.dt + a) for w in v.elements for a in range(ring.dt)])
        hv_big = lt_v.intersect(s.h_span)
        hv = Subspace.span(f, d.dh, [s.h_span.coords(x) for x in hv_big.basis])
        if ideal_generated_by_augmentation(s.hopf, hv) != ideal:
            raise CorrespondenceError("I differs from H (Lt[V]^G)^+")
        l_i = fixed_space(d, ideal)
        if l_i != l_u:
            raise CorrespondenceError("L^I != L^U")
        cls = classify_subspace(s.hopf, ideal)
        if not cls.left_ideal_coideal:
            raise CorrespondenceError("ideal of a V is not a left ideal two-sided coideal")
        info = subextension_flags(d, l_i)
        normal = v.is_normal_in(s.n_grp)
        if not (normal == cls.hopf_ideal == info.h_normal):
            raise CorrespondenceError("normal V, Hopf ideal and H-normal field disagree")
        out.append(GroupSideRow(v, u, normal, ideal, l_i, hv, cls.hopf_ideal, info.h_normal, res.quotient_size))

    # item-by-item comparison with the ideal side
    lattice = correspondence_lattice(d, [r.ideal for r in out])
    by_ideal = {row.ideal: row for row in lattice.rows}
    if len(by_ideal) != len(out):
        raise CorrespondenceError("distinct equivariant subgroups gave equal ideals")
    for r in out:
        row = by_ideal[r.ideal]
        if row.field != r.field or row.hopf_subalgebra != r.hopf_subalgebra:
            raise CorrespondenceError("group side and ideal side disagree")
    # V -> U is inclusion preserving; V -> L^U is inclusion reversing
    for a in out:
        for b in out:
            if a.v.is_subgroup_of(b.v) != a.u.is_subgroup_of(b.u):
                raise CorrespondenceError("V -> U does not preserve inclusion")
            if a.v.is_subgroup_of(b.v) != a.field.contains(b.field):
                raise CorrespondenceError("V -> L^U does not reverse inclusion")
    out.sort(key=lambda r: (r.field.dim, r.field.basis))
    return out


def left_ideal_coideal_oracle(h: HopfAlgebraData, max_dim: int = 4) -> list[Subspace]:
    """Every left ideal two-sided coideal, by exhaustive subspace enumeration over GF(2)."""
    from .linalg import all_subspaces
    from .hopf import classify_subspace as classify

    if h.field.char != 2 or h.dim > max_dim:
        raise PreconditionError("the subspace oracle runs over GF(2) in dimension <= 4")
    return [s for s in all_subspaces(h.field, h.dim) if classify(h, s).left_ideal_coideal]
