"""Finite permutation groups, materialized as sorted element lists.

A permutation of degree ``n`` is a tuple ``img`` with ``img[i]`` the image of
``i``.  Composition is ``(s * t)(i) = s(t(i))``, written ``compose(s, t)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Mapping, Sequence

from .errors import BoundExceededError, InputError, InvariantViolation, PreconditionError

Perm = tuple

DEFAULT_CLOSURE_BOUND = 720
DEFAULT_REGULAR_BOUND = 8
DEFAULT_SUBGROUP_BOUND = 24


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(s: Perm, t: Perm) -> Perm:
    return tuple(s[i] for i in t)


def inverse(s: Perm) -> Perm:
    out = [0] * len(s)
    for i, j in enumerate(s):
        out[j] = i
    return tuple(out)


def conjugate(a: Perm, s: Perm) -> Perm:
    """``a s a^{-1}``."""
    out = [0] * len(s)
    for i, j in enumerate(s):
        out[a[i]] = a[j]
    return tuple(out)


def is_perm(s: Sequence[int], n: int) -> bool:
    return len(s) == n and sorted(s) == list(range(n))


def from_cycles(n: int, *cycles: Sequence[int]) -> Perm:
    img = list(range(n))
    for cyc in cycles:
        for k, a in enumerate(cyc):
            img[a] = cyc[(k + 1) % len(cyc)]
    if not is_perm(img, n):
        raise InputError(f"cycles {cycles!r} do not define a permutation of degree {n}")
    return tuple(img)


def perm_order(s: Perm) -> int:
    e = identity(len(s))
    k, cur = 1, s
    while cur != e:
        cur = compose(s, cur)
        k += 1
    return k


# ---------------------------------------------------------------------------
# groups
# ---------------------------------------------------------------------------


class PermGroup:
    """A permutation group with every element listed, sorted lexicographically."""

    def __init__(self, degree: int, gens: Iterable[Perm], elements: Iterable[Perm], *, check: bool = True):
        self.degree = degree
        self.gens = tuple(tuple(g) for g in gens)
        self.elements = tuple(sorted(set(tuple(e) for e in elements)))
        self._index = {e: i for i, e in enumerate(self.elements)}
        if check:
            self._check()

    def _check(self):
        n = self.degree
        e = identity(n)
        if e not in self._index:
            raise InvariantViolation("group-identity", "element list lacks the identity")
        for s in self.elements:
            if not is_perm(s, n):
                raise InvariantViolation("group-degree", f"{s!r} is not a permutation of degree {n}", witness=list(s))
            if inverse(s) not in self._index:
                raise InvariantViolation("group-inverse", "element list not closed under inverse", witness=list(s))
        for g in self.gens:
            if g not in self._index:
                raise InvariantViolation("group-generators", "generator outside the element list", witness=list(g))
        gens = self.gens or self.elements
        for s in self.elements:
            for g in gens:
                if compose(g, s) not in self._index:
                    raise InvariantViolation("group-closure", "element list not closed under composition", witness=[list(g), list(s)])

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, s) -> bool:
        return tuple(s) in self._index

    def index(self, s: Perm) -> int:
        return self._index[tuple(s)]

    def __eq__(self, other):
        if not isinstance(other, PermGroup):
            return NotImplemented
        return self.degree == other.degree and self.elements == other.elements

    def __hash__(self):
        return hash((self.degree, self.elements))

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self.order}, gens={[list(g) for g in self.canonical_gens]})"

    @cached_property
    def identity(self) -> Perm:
        return identity(self.degree)

    @cached_property
    def canonical_gens(self) -> tuple[Perm, ...]:
        """Greedy generating set: scan elements in order, keep those not yet generated."""
        gens: list[Perm] = []
        cur = {self.identity}
        for s in self.elements:
            if s not in cur:
                gens.append(s)
                cur = set(_close(self.degree, gens))
        return tuple(gens)

    def sort_key(self):
        return (self.order, self.canonical_gens)

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and all(s in other for s in self.elements)

    def is_normal_in(self, other: "PermGroup") -> bool:
        return all(conjugate(a, s) in self for a in other.gens or other.elements for s in self.gens or self.elements)

    def is_abelian(self) -> bool:
        gs = self.canonical_gens
        return all(compose(a, b) == compose(b, a) for a in gs for b in gs)

    def orbit(self, point: int) -> list[int]:
        return sorted({s[point] for s in self.elements})

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree if self.degree else True

    def is_regular(self) -> bool:
        return self.order == self.degree and self.is_transitive()

    def normalizes(self, other: "PermGroup") -> bool:
        """True if every generator of ``self`` conjugates ``other`` into itself."""
        gens = self.gens or self.elements
        ogens = other.gens or other.elements
        return all(conjugate(a, s) in other for a in gens for s in ogens)

    def mul_table(self) -> list[list[int]]:
        idx = self._index
        return [[idx[compose(a, b)] for b in self.elements] for a in self.elements]

    def to_json(self) -> dict:
        return {"degree": self.degree, "generators": [list(g) for g in self.canonical_gens]}


def _close(degree: int, gens: Sequence[Perm], bound: int | None = None) -> set[Perm]:
    e = identity(degree)
    elems = {e}
    frontier = [e]
    gens = [tuple(g) for g in gens]
    while frontier:
        nxt = []
        for s in frontier:
            for g in gens:
                t = tuple(g[i] for i in s)
                if t not in elems:
                    elems.add(t)
                    nxt.append(t)
                    if bound is not None and len(elems) > bound:
                        raise BoundExceededError(f"group order exceeds the bound {bound}", bound=bound)
        frontier = nxt
    return elems


def closure(degree: int, gens: Iterable[Perm], bound: int = DEFAULT_CLOSURE_BOUND) -> PermGroup:
    """The group generated by ``gens``, fully enumerated."""
    gens = [tuple(g) for g in gens]
    for g in gens:
        if not is_perm(g, degree):
            raise InputError(f"{list(g)!r} is not a permutation of degree {degree}")
    elems = _close(degree, gens, bound)
    return PermGroup(degree, gens, elems, check=False)


def symmetric_group(n: int, bound: int = DEFAULT_CLOSURE_BOUND) -> PermGroup:
    if n <= 1:
        return closure(n, [], bound)
    gens = [from_cycles(n, (0, 1))]
    if n > 2:
        gens.append(from_cycles(n, tuple(range(n))))
    return closure(n, gens, bound)


def cyclic_group(n: int) -> PermGroup:
    return closure(n, [from_cycles(n, tuple(range(n)))] if n > 1 else [])


def group_from_table(table: Sequence[Sequence[int]]) -> tuple[PermGroup, list[Perm]]:
    """Left regular representation of an abstract group given by its table.

    Returns the permutation group and the list mapping abstract index ``i`` to
    its permutation ``j -> table[i][j]``.
    """
    n = len(table)
    perms = []
    for i, row in enumerate(table):
        if len(row) != n or not is_perm(row, n):
            raise InvariantViolation("group-table", f"row {i} of the group table is not a permutation", witness=i)
        perms.append(tuple(row))
    for i in range(n):
        for j in range(n):
            if compose(perms[i], perms[j]) != perms[table[i][j]]:
                raise InvariantViolation("group-table", "group table is not associative", witness=[i, j])
    if len(set(perms)) != n:
        raise InvariantViolation("group-table", "group table rows repeat")
    grp = PermGroup(n, perms, perms)
    return grp, perms


# ---------------------------------------------------------------------------
# cosets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CosetDatum:
    group: PermGroup
    subgroup: PermGroup
    cosets: tuple[tuple[Perm, ...], ...]
    coset_of: Mapping[Perm, int]
    lam: Mapping[Perm, Perm]
    lambda_img: PermGroup

    @property
    def index(self) -> int:
        return len(self.cosets)

    def rep(self, c: int) -> Perm:
        return self.cosets[c][0]


def coset_datum(g: PermGroup, g_prime: PermGroup) -> CosetDatum:
    """Left cosets ``hG'`` (1G' first, then by minimal element) and the translation action on them."""
    if not g_prime.is_subgroup_of(g):
        raise PreconditionError("g_prime is not a subgroup of g")
    seen: dict[Perm, int] = {}
    cosets: list[tuple[Perm, ...]] = []
    for h in g.elements:
        if h in seen:
            continue
        c = tuple(sorted(compose(h, x) for x in g_prime.elements))
        for y in c:
            seen[y] = -1
        cosets.append(c)
    cosets.sort(key=lambda c: c[0])
    coset_of = {y: i for i, c in enumerate(cosets) for y in c}
    lam = {a: tuple(coset_of[compose(a, c[0])] for c in cosets) for a in g.elements}
    img = PermGroup(len(cosets), [lam[a] for a in g.gens], lam.values(), check=False)
    return CosetDatum(g, g_prime, tuple(cosets), coset_of, lam, img)


# ---------------------------------------------------------------------------
# subgroup enumeration
# ---------------------------------------------------------------------------


def all_subgroups(g: PermGroup, bound: int = DEFAULT_SUBGROUP_BOUND) -> list[PermGroup]:
    """Every subgroup, by incremental closure with Lagrange pruning."""
    if g.order > bound:
        raise BoundExceededError(f"group of order {g.order} exceeds the subgroup-enumeration bound {bound}", bound=bound)
    order = g.order
    n = g.degree
    trivial = frozenset([g.identity])
    found = {trivial: []}
    frontier = [trivial]
    while frontier:
        nxt = []
        for h in frontier:
            gens = found[h]
            for x in g.elements:
                if x in h:
                    continue
                new = _close(n, gens + [x])
                if order % len(new):
                    raise InvariantViolation("lagrange", "subgroup order does not divide the group order")
                key = frozenset(new)
                if key not in found:
                    found[key] = gens + [x]
                    nxt.append(key)
        frontier = nxt
    groups = [PermGroup(n, gens, elems, check=False) for elems, gens in found.items()]
    return sorted(groups, key=PermGroup.sort_key)


def _regular_search(n: int) -> list[frozenset]:
    e = identity(n)
    results: list[frozenset] = []

    def extend(elems: dict[int, Perm], gens: list[Perm]):
        # elems maps image-of-0 -> element; semiregular groups are determined this way
        if len(elems) == n:
            results.append(frozenset(elems.values()))
            return
        j = next(i for i in range(n) if i not in elems)
        forbidden = [[m[y] for m in elems.values()] for y in range(n)]
        img = [-1] * n
        img[0] = j
        used = [False] * n
        used[j] = True

        def fill(y: int):
            if y == n:
                yield tuple(img)
                return
            bad = forbidden[y]
            for v in range(n):
                if not used[v] and v not in bad:
                    img[y] = v
                    used[v] = True
                    yield from fill(y + 1)
                    used[v] = False
            img[y] = -1

        if j in forbidden[0]:
            return
        for sigma in fill(1):
            new = _semiregular_closure(elems, gens + [sigma], n)
            if new is not None:
                extend(new, gens + [sigma])

    extend({0: e}, [])
    return results


def _semiregular_closure(elems: dict[int, Perm], gens: list[Perm], n: int) -> dict[int, Perm] | None:
    out = dict(elems)
    frontier = list(out.values())
    while frontier:
        nxt = []
        for s in frontier:
            for g in gens:
                t = tuple(g[i] for i in s)
                k = t[0]
                old = out.get(k)
                if old is None:
                    out[k] = t
                    nxt.append(t)
                elif old != t:
                    return None
        frontier = nxt
    return out


def regular_subgroups(n: int, bound: int = DEFAULT_REGULAR_BOUND) -> list[PermGroup]:
    """All regular subgroups of ``Sym(n)``.

    Each regular group is a set of permutations indexed by where they send 0.
    The search fixes elements in a canonical order (smallest point not yet in
    the orbit of 0), so every group is reached along exactly one path.
    """
    if n < 1:
        raise InputError("degree must be positive")
    if n > bound:
        raise BoundExceededError(f"regular-subgroup enumeration is bounded by degree {bound}", bound=bound)
    groups = {s for s in _regular_search(n)}
    out = [PermGroup(n, [], elems, check=False) for elems in groups]
    return sorted(out, key=lambda h: h.canonical_gens)


def regular_subgroups_oracle(n: int) -> list[PermGroup]:
    """Regular subgroups by filtering every subgroup of ``Sym(n)`` (small n only)."""
    subs = all_subgroups(symmetric_group(n), bound=max(DEFAULT_SUBGROUP_BOUND, 1))
    return sorted((h for h in subs if h.is_regular()), key=lambda h: h.canonical_gens)


def hg_candidates(g: PermGroup, g_prime: PermGroup, bound: int = DEFAULT_REGULAR_BOUND) -> list[PermGroup]:
    """Regular subgroups of ``Perm(G/G')`` normalized by the translation image of ``G``."""
    cd = coset_datum(g, g_prime)
    lam = cd.lambda_img
    return [nn for nn in regular_subgroups(cd.index, bound) if lam.normalizes(nn)]


def hg_candidates_oracle(g: PermGroup, g_prime: PermGroup) -> list[PermGroup]:
    cd = coset_datum(g, g_prime)
    lam = cd.lambda_img
    out = []
    for nn in regular_subgroups_oracle(cd.index):
        if all(conjugate(a, s) in nn for a in lam.elements for s in nn.elements):
            out.append(nn)
    return out


def right_regular_subgroup(cd: CosetDatum) -> PermGroup:
    """Centralizer of the translation image; for ``G' = 1`` this is the classical structure."""
    lam = cd.lambda_img
    n = cd.index
    found = []
    # elements commuting with lambda(G) are determined by the image of the point 0
    for target in range(n):
        img = [-1] * n
        ok = True
        for a in lam.elements:
            src = a[0]
            val = a[target]
            if img[src] == -1:
                img[src] = val
            elif img[src] != val:
                ok = False
                break
        if ok and -1 not in img and is_perm(img, n):
            s = tuple(img)
            if all(compose(s, a) == compose(a, s) for a in lam.gens):
                found.append(s)
    return PermGroup(n, [], found)


# ---------------------------------------------------------------------------
# group actions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupAction:
    """An action of ``acting`` on the group ``target`` by automorphisms."""

    acting: PermGroup
    target: PermGroup
    table: Mapping[tuple[Perm, Perm], Perm]

    def __call__(self, a: Perm, n: Perm) -> Perm:
        return self.table[(a, n)]

    def validate(self):
        for a in self.acting.elements:
            for n1 in self.target.elements:
                an1 = self(a, n1)
                if an1 not in self.target:
                    raise InvariantViolation("action-closure", "action leaves the target group", witness=[list(a), list(n1)])
                for n2 in self.target.gens or self.target.elements:
                    if self(a, compose(n1, n2)) != compose(an1, self(a, n2)):
                        raise InvariantViolation("action-automorphism", "not an action by automorphisms", witness=[list(a), list(n1), list(n2)])
        e = self.acting.identity
        if any(self(e, n) != n for n in self.target.elements):
            raise InvariantViolation("action-unit", "identity does not act trivially")
        for a1 in self.acting.gens or self.acting.elements:
            for a2 in self.acting.elements:
                a12 = compose(a1, a2)
                for n in self.target.elements:
                    if self(a12, n) != self(a1, self(a2, n)):
                        raise InvariantViolation("action-composition", "(a1 a2).n != a1.(a2.n)", witness=[list(a1), list(a2), list(n)])
        return True

    def stabilizes(self, v: PermGroup) -> bool:
        gens = self.acting.gens or self.acting.elements
        vg = v.gens or v.elements
        return all(self(a, s) in v for a in gens for s in vg)


def conjugation_action(cd: CosetDatum, n_grp: PermGroup) -> GroupAction:
    """``g . n = lambda(g) n lambda(g)^{-1}`` inside ``Perm(G/G')``."""
    table = {}
    for a in cd.group.elements:
        la = cd.lam[a]
        for s in n_grp.elements:
            table[(a, s)] = conjugate(la, s)
    return GroupAction(cd.group, n_grp, table)


def trivial_group_action(acting: PermGroup, target: PermGroup) -> GroupAction:
    return GroupAction(acting, target, {(a, s): s for a in acting.elements for s in target.elements})


def equivariant_subgroups(act: GroupAction, normal_only: bool = False) -> list[PermGroup]:
    out = []
    for v in all_subgroups(act.target):
        if not act.stabilizes(v):
            continue
        if normal_only and not v.is_normal_in(act.target):
            continue
        out.append(v)
    return out


# ---------------------------------------------------------------------------
# the group-theoretic correspondence N/V <-> G/U
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GpActResult:
    u: PermGroup
    iso_check: bool
    quotient_size: int


def orbit_map(cd: CosetDatum, n_grp: PermGroup) -> dict[Perm, int]:
    """``beta(n) = (1G') . n`` with the right action ``c . n = n(c)``."""
    return {s: s[0] for s in n_grp.elements}


def gp_act_correspondence(
    g: PermGroup,
    g_prime: PermGroup,
    n_grp: PermGroup,
    act: GroupAction,
    beta: Mapping[Perm, int],
    v: PermGroup,
    cd: CosetDatum | None = None,
) -> GpActResult:
    if cd is None:
        cd = coset_datum(g, g_prime)
    k = cd.index
    # hypotheses
    if sorted(beta[s] for s in n_grp.elements) != list(range(k)) or len(beta) != n_grp.order:
        raise PreconditionError("beta is not a bijection N -> G/G'")
    for s in n_grp.elements:
        for t in n_grp.gens or n_grp.elements:
            # right action: c . (s t) = (c . s) . t  with c . s = s(c)
            if beta[compose(t, s)] != t[beta[s]]:
                raise PreconditionError("beta is not right-N-equivariant", witness=[list(s), list(t)])
    for a in g.elements:
        la = cd.lam[a]
        for c in range(k):
            for s in n_grp.gens or n_grp.elements:
                if la[s[c]] != act(a, s)[la[c]]:
                    raise PreconditionError("compatibility g.((hG').n) = (ghG').(g.n) fails", witness=[list(a), c, list(s)])
    if not v.is_subgroup_of(n_grp):
        raise PreconditionError("v is not a subgroup of N")
    if not act.stabilizes(v):
        raise PreconditionError("v is not equivariant")

    bv = {beta[s] for s in v.elements}
    u_elems = [a for a in g.elements if cd.coset_of[a] in bv]
    ok = True
    if not _is_subgroup_set(u_elems, g.degree):
        raise PreconditionError("U is not a subgroup")  # lemma (a) failure
    u = PermGroup(g.degree, [], u_elems, check=False)
    if not g_prime.is_subgroup_of(u):
        ok = False
    # (b): the coset (gG').v lies in gU
    u_set = set(u_elems)
    for a in g.elements:
        c = cd.coset_of[a]
        ainv = inverse(a)
        for s in v.elements:
            target = cd.cosets[s[c]][0]
            if compose(ainv, target) not in u_set:
                ok = False
    # (c): nV -> beta(n)U is well defined and bijective
    cls_n: dict[frozenset, frozenset] = {}
    for s in n_grp.elements:
        nv = frozenset(compose(x, s) for x in v.elements)
        rep = cd.cosets[beta[s]][0]
        gu = frozenset(compose(rep, y) for y in u_elems)
        if cls_n.setdefault(nv, gu) != gu:
            ok = False
    images = set(cls_n.values())
    n_cosets_gu = g.order // u.order
    if len(images) != len(cls_n) or len(images) != n_cosets_gu:
        ok = False
    if u.order * n_grp.order != g.order * v.order:
        ok = False
    return GpActResult(u, ok, len(cls_n))


def _is_subgroup_set(elems: Sequence[Perm], degree: int) -> bool:
    s = set(elems)
    if identity(degree) not in s:
        return False
    return all(compose(a, b) in s for a in elems for b in elems)
