"""n x m-valued Lukasiewicz-Moisil algebras given by finite tables.

The chrysippian operations are indexed by pairs ``(i, j)`` with
``1 <= i <= n-1`` and ``1 <= j <= m-1``; they are stored in row-major order of
those pairs.  An optional ``exists`` table turns the algebra into a monadic one.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import cached_property
from itertools import product

from .core import (
    ConsistencyError, FiniteAlgebra, Rejected, Report, StructuralError, bottom_of,
    enumerate_homomorphisms, leq_from_meet, mask_of, members, top_of, up_masks,
    DEFAULT_CAPS, Caps,
)


def sigma_indices(n: int, m: int) -> list:
    return [(i, j) for i in range(1, n) for j in range(1, m)]


def sigma_key(i: int, j: int) -> str:
    return f"s{i},{j}"


@dataclass(frozen=True)
class LmAlgebra:
    names: tuple
    meet: tuple
    join: tuple
    neg: tuple
    n: int
    m: int
    sigma: tuple
    exists: tuple = None

    def __post_init__(self):
        size = len(self.names)
        if self.n < 2 or self.m < 2:
            raise StructuralError(f"n and m must be >= 2, got {self.n}x{self.m}")
        if len(self.sigma) != (self.n - 1) * (self.m - 1):
            raise StructuralError(
                f"expected {(self.n - 1) * (self.m - 1)} sigma tables for "
                f"{self.n}x{self.m}, got {len(self.sigma)}")
        if len(self.neg) != size or any(len(t) != size for t in self.sigma):
            raise StructuralError("unary table length differs from carrier size")
        if self.exists is not None and len(self.exists) != size:
            raise StructuralError("exists table length differs from carrier size")
        # totality and shape of everything, via the generic carrier check
        self.algebra  # noqa: B018

    # -- basic structure ---------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.names)

    @property
    def indices(self) -> list:
        return sigma_indices(self.n, self.m)

    @cached_property
    def _sigma_pos(self) -> dict:
        return {ij: k for k, ij in enumerate(self.indices)}

    def s(self, i: int, j: int) -> tuple:
        return self.sigma[self._sigma_pos[(i, j)]]

    @property
    def is_monadic(self) -> bool:
        return self.exists is not None

    @cached_property
    def leq(self) -> list:
        return leq_from_meet(self.meet)

    @cached_property
    def up(self) -> list:
        return up_masks(self.leq)

    @cached_property
    def zero(self) -> int:
        return bottom_of(self.meet)

    @cached_property
    def one(self) -> int:
        return top_of(self.join)

    @cached_property
    def forall(self) -> tuple:
        if self.exists is None:
            raise Rejected("algebra has no quantifier")
        e, neg = self.exists, self.neg
        return tuple(neg[e[neg[x]]] for x in range(self.size))

    @property
    def full(self) -> int:
        return (1 << self.size) - 1

    @cached_property
    def algebra(self) -> FiniteAlgebra:
        """Generic view used by closure and homomorphism search."""
        unary = {"neg": self.neg}
        for (i, j), t in zip(self.indices, self.sigma):
            unary[sigma_key(i, j)] = t
        if self.exists is not None:
            unary["exists"] = self.exists
        return FiniteAlgebra(
            names=tuple(self.names),
            unary=unary,
            binary={"meet": self.meet, "join": self.join},
            constants={"0": bottom_of(self.meet), "1": top_of(self.join)},
        )

    @property
    def lm_signature(self) -> tuple:
        return ("meet", "join", "neg") + tuple(sigma_key(i, j) for i, j in self.indices) + ("0", "1")

    @property
    def mlm_signature(self) -> tuple:
        return self.lm_signature + ("exists",)

    def with_exists(self, exists) -> "LmAlgebra":
        return replace(self, exists=None if exists is None else tuple(exists))

    def reduct(self) -> "LmAlgebra":
        return self.with_exists(None)

    def identity_exists(self) -> "LmAlgebra":
        return self.with_exists(range(self.size))

    def name_set(self, mask: int) -> list:
        return [self.names[x] for x in members(mask)]

    def index(self, name) -> int:
        return self.names.index(name)

    def meet_all(self, xs) -> int:
        r = self.one
        for x in xs:
            r = self.meet[r][x]
        return r

    def join_all(self, xs) -> int:
        r = self.zero
        for x in xs:
            r = self.join[r][x]
        return r


# --------------------------------------------------------------------------
# axiom suites


def check_de_morgan(L: LmAlgebra) -> Report:
    report = Report()
    neg, meet, join = L.neg, L.meet, L.join
    for x in range(L.size):
        if neg[neg[x]] != x:
            report.add("DM-involution", (x,))
    for x, y in product(range(L.size), repeat=2):
        if neg[meet[x][y]] != join[neg[x]][neg[y]]:
            report.add("DM-law", (x, y))
    return report


def check_lm_axioms(L: LmAlgebra) -> Report:
    """C1-C7 by exhaustive table scan; each violation carries a witness."""
    report = Report()
    n, m, N = L.n, L.m, L.size
    join, neg, leq = L.join, L.neg, L.leq
    idx = L.indices
    for (i, j) in idx:
        s = L.s(i, j)
        for x, y in product(range(N), repeat=2):
            if s[join[x][y]] != join[s[x]][s[y]]:
                report.add("C1", (i, j, x, y))
        for x in range(N):
            if i + 1 <= n - 1 and not leq[s[x]][L.s(i + 1, j)[x]]:
                report.add("C2", (i, j, x))
            if j + 1 <= m - 1 and not leq[s[x]][L.s(i, j + 1)[x]]:
                report.add("C3", (i, j, x))
            for (r, t) in idx:
                if s[L.s(r, t)[x]] != L.s(r, t)[x]:
                    report.add("C4", (i, j, r, t, x))
            if join[s[x]][neg[s[x]]] != L.one:
                report.add("C6", (i, j, x))
            if s[neg[x]] != neg[L.s(n - i, m - j)[x]]:
                report.add("C7", (i, j, x))
    seen = {}
    for x in range(N):
        key = tuple(t[x] for t in L.sigma)
        if key in seen:
            report.add("C5", (seen[key], x), "sigma profiles coincide")
        else:
            seen[key] = x
    return report


# --------------------------------------------------------------------------
# derived operations


def boolean_center(L: LmAlgebra) -> int:
    """Complemented elements; must coincide with the image of every sigma."""
    N = L.size
    comp = mask_of(x for x in range(N)
                   if any(L.meet[x][y] == L.zero and L.join[x][y] == L.one for y in range(N)))
    for (i, j), t in zip(L.indices, L.sigma):
        if mask_of(t) != comp:
            raise ConsistencyError(
                f"image of sigma{i},{j} differs from the complemented elements")
    return comp


def delta(L: LmAlgebra, a: int, b: int) -> int:
    """The ``+`` operation: a Boolean element that is 1 exactly when a == b."""
    r = L.one
    neg, meet, join = L.neg, L.meet, L.join
    for t in L.sigma:
        sa, sb = t[a], t[b]
        r = meet[r][meet[join[neg[sa]][sb]][join[neg[sb]][sa]]]
    return r


def delta_table(L: LmAlgebra) -> list:
    return [[delta(L, a, b) for b in range(L.size)] for a in range(L.size)]


def implication(L: LmAlgebra, x: int, y: int) -> int:
    return L.join[L.s(L.n - 1, L.m - 1)[L.neg[x]]][y]


def check_delta_laws(L: LmAlgebra) -> Report:
    report = Report()
    N = L.size
    d = delta_table(L)
    meet, join, neg = L.meet, L.join, L.neg
    s11 = L.s(1, 1)
    for a, b in product(range(N), repeat=2):
        v = d[a][b]
        if (v == L.one) != (a == b):
            report.add("T1", (a, b))
        if v != d[b][a]:
            report.add("T2", (a, b))
        if meet[v][a] != meet[v][b]:
            report.add("T3", (a, b))
        if any(t[v] != v for t in L.sigma):
            report.add("T5", (a, b))
        if meet[v][neg[v]] != L.zero or join[v][neg[v]] != L.one:
            report.add("T6", (a, b))
    for a in range(N):
        if d[a][L.one] != s11[a]:
            report.add("T4", (a,))
    return report


# --------------------------------------------------------------------------
# filters and deductive systems


def filter_generated(L: LmAlgebra, xs: int) -> int:
    """Lattice filter generated by a mask; finite, hence principal."""
    return L.up[L.meet_all(members(xs))]


def lattice_filters(L: LmAlgebra) -> list:
    return sorted(set(L.up))


def is_filter(L: LmAlgebra, mask: int) -> bool:
    if not mask >> L.one & 1:
        return False
    xs = members(mask)
    if any(L.up[x] & ~mask for x in xs):
        return False
    return all(mask >> L.meet[x][y] & 1 for x in xs for y in xs)


def is_stone_filter(L: LmAlgebra, mask: int) -> bool:
    s11 = L.s(1, 1)
    return is_filter(L, mask) and all(mask >> s11[x] & 1 for x in members(mask))


def _mp_closure(L: LmAlgebra, start: int) -> int:
    N = L.size
    imp = [[implication(L, x, y) for y in range(N)] for x in range(N)]
    d = start | 1 << L.one
    changed = True
    while changed:
        changed = False
        for x in members(d):
            row = imp[x]
            for y in range(N):
                if not d >> y & 1 and d >> row[y] & 1:
                    d |= 1 << y
                    changed = True
    return d


def deductive_system_generated(L: LmAlgebra, xs: int) -> int:
    """Closure of ``xs`` under modus ponens, cross-checked against F(sigma11 xs)."""
    d = _mp_closure(L, xs)
    s11 = L.s(1, 1)
    via_filter = filter_generated(L, mask_of(s11[x] for x in members(xs)))
    if d != via_filter:
        raise ConsistencyError(
            f"D(X) by modus ponens {L.name_set(d)} != F(sigma11 X) {L.name_set(via_filter)}")
    return d


def deductive_systems(L: LmAlgebra, caps: Caps = DEFAULT_CAPS) -> list:
    """All deductive systems: joins of singly generated ones, to a fixpoint."""
    caps.require("carrier", L.size)
    found = {_mp_closure(L, 0)} | {_mp_closure(L, 1 << a) for a in range(L.size)}
    frontier = set(found)
    while frontier:
        new = set()
        for d1 in frontier:
            for d2 in found:
                d = _mp_closure(L, d1 | d2)
                if d not in found:
                    new.add(d)
        found |= new
        frontier = new
    return sorted(found)


def stone_filters(L: LmAlgebra, caps: Caps = DEFAULT_CAPS) -> list:
    caps.require("carrier", L.size)
    out = [f for f in lattice_filters(L) if is_stone_filter(L, f)]
    if out != deductive_systems(L, caps):
        raise ConsistencyError("Stone filters differ from deductive systems")
    return out


def is_centred(L: LmAlgebra):
    """Least centring element per index pair, or None when some pair has none."""
    family = {}
    for (i, j) in L.indices:
        good = [c for c in range(L.size)
                if all(L.s(r, t)[c] == (L.one if (i <= r and j <= t) else L.zero)
                       for (r, t) in L.indices)]
        least = [c for c in good if all(L.leq[c][d] for d in good)]
        if not least:
            return None
        family[(i, j)] = least[0]
    return family


# --------------------------------------------------------------------------
# subalgebras and constructions


def subalgebra_closure(L: LmAlgebra, mask: int, use_exists: bool = True) -> int:
    N = L.size
    unary = [L.neg, *L.sigma]
    if use_exists and L.exists is not None:
        unary.append(L.exists)
    cur = mask | 1 << L.zero | 1 << L.one
    while True:
        xs = members(cur)
        nxt = cur
        for u in unary:
            for x in xs:
                nxt |= 1 << u[x]
        for x in xs:
            for y in xs:
                nxt |= 1 << L.meet[x][y] | 1 << L.join[x][y]
        if nxt == cur:
            return cur
        cur = nxt


def is_subalgebra(L: LmAlgebra, mask: int, use_exists: bool = False) -> bool:
    return subalgebra_closure(L, mask, use_exists) == mask


def subalgebra(L: LmAlgebra, mask: int, n=None, m=None, use_exists: bool = True):
    """Restrict ``L`` to a closed subset; returns ``(sub, embedding_indices)``.

    ``n``/``m`` may override the type only when the subset is Boolean, where
    every sigma acts as the identity.
    """
    if subalgebra_closure(L, mask, use_exists) != mask:
        raise Rejected(f"{L.name_set(mask)} is not closed under the operations")
    emb = members(mask)
    pos = {x: k for k, x in enumerate(emb)}
    re1 = lambda t: tuple(pos[t[x]] for x in emb)  # noqa: E731
    re2 = lambda t: tuple(tuple(pos[t[x][y]] for y in emb) for x in emb)  # noqa: E731
    sigma = tuple(re1(t) for t in L.sigma)
    nn, mm = L.n if n is None else n, L.m if m is None else m
    if (nn, mm) != (L.n, L.m):
        if any(t != tuple(range(len(emb))) for t in sigma):
            raise Rejected("type change only allowed for Boolean subalgebras")
        sigma = tuple(tuple(range(len(emb))) for _ in sigma_indices(nn, mm))
    ex = re1(L.exists) if (use_exists and L.exists is not None) else None
    sub = LmAlgebra(tuple(L.names[x] for x in emb), re2(L.meet), re2(L.join), re1(L.neg),
                    nn, mm, sigma, ex)
    return sub, emb


def boolean_algebra(atoms: int, exists=None, names=None) -> LmAlgebra:
    """Power set of ``atoms`` points as an LM algebra of type 2x2."""
    size = 1 << atoms
    full = size - 1
    meet = tuple(tuple(a & b for b in range(size)) for a in range(size))
    join = tuple(tuple(a | b for b in range(size)) for a in range(size))
    neg = tuple(full ^ a for a in range(size))
    if names is None:
        names = ("0", "1") if atoms == 1 else tuple(
            "{" + ",".join(str(k) for k in range(atoms) if a >> k & 1) + "}" for a in range(size))
    return LmAlgebra(tuple(names), meet, join, neg, 2, 2, (tuple(range(size)),),
                     None if exists is None else tuple(exists))


def product_algebra(A: LmAlgebra, B: LmAlgebra, exists=None) -> LmAlgebra:
    """Direct product; element ``(a, b)`` has index ``a * |B| + b``."""
    if (A.n, A.m) != (B.n, B.m):
        raise Rejected("factors have different types")
    nb = B.size
    pairs = [(a, b) for a in range(A.size) for b in range(nb)]
    ix = lambda a, b: a * nb + b  # noqa: E731
    meet = tuple(tuple(ix(A.meet[a][c], B.meet[b][d]) for c, d in pairs) for a, b in pairs)
    join = tuple(tuple(ix(A.join[a][c], B.join[b][d]) for c, d in pairs) for a, b in pairs)
    neg = tuple(ix(A.neg[a], B.neg[b]) for a, b in pairs)
    sigma = tuple(tuple(ix(ta[a], tb[b]) for a, b in pairs) for ta, tb in zip(A.sigma, B.sigma))
    if exists is None and A.exists is not None and B.exists is not None:
        exists = tuple(ix(A.exists[a], B.exists[b]) for a, b in pairs)
    names = tuple(f"({A.names[a]},{B.names[b]})" for a, b in pairs)
    return LmAlgebra(names, meet, join, neg, A.n, A.m, sigma,
                     None if exists is None else tuple(exists))


def relabel(L: LmAlgebra, names) -> LmAlgebra:
    return replace(L, names=tuple(names))


def lm_isomorphism(A: LmAlgebra, B: LmAlgebra, monadic: bool = True):
    """An isomorphism ``A -> B`` as an index tuple, or None."""
    if (A.n, A.m) != (B.n, B.m) or A.size != B.size:
        return None
    sig = A.mlm_signature if (monadic and A.exists is not None and B.exists is not None) \
        else A.lm_signature
    ua = [bin(x).count("1") for x in A.up]
    ub = [bin(x).count("1") for x in B.up]
    cand = [[y for y in range(B.size) if ub[y] == ua[x]] for x in range(A.size)]
    found = enumerate_homomorphisms(A.algebra, B.algebra, sig, cand, injective=True,
                                    first_only=True)
    return found[0] if found else None


def relation_of_filter(L: LmAlgebra, F: int):
    """x ~ y iff x & f == y & f for some f in F (as a Partition)."""
    from .core import Partition, UnionFind

    uf = UnionFind(L.size)
    for f in members(F):
        col = [L.meet[x][f] for x in range(L.size)]
        first = {}
        for x, v in enumerate(col):
            uf.union(first.setdefault(v, x), x)
    part = uf.partition()
    # the union over f of kernels is already transitive when F is a filter
    if F and any(not any(L.meet[x][f] == L.meet[y][f] for f in members(F))
                 for x, y in part.pairs()):
        raise Rejected(f"{L.name_set(F)} does not induce an equivalence")
    return part
