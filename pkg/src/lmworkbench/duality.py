"""Finite duality between monadic LM algebras and mlm-spaces.

On a finite space the topology is discrete: every subset is clopen, continuity
is vacuous, and "increasing clopen" means up-set.  Subsets of points are masks.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .core import (
    DEFAULT_CAPS, Caps, ConsistencyError, Partition, Rejected, Report, StructuralError,
    check_poset, enumerate_upsets, is_upset, mask_of, members, preservation_report,
)
from .congruence import all_congruences, principal_congruence
from .lm import LmAlgebra, check_lm_axioms, delta, sigma_indices
from .quantifier import check_quantifier


@dataclass(frozen=True)
class MlmSpace:
    names: tuple
    leq: tuple
    g: tuple
    f: tuple  # one table per sigma index pair, row-major
    E: Partition
    n: int
    m: int

    def __post_init__(self):
        k = len(self.names)
        if len(self.leq) != k or any(len(r) != k for r in self.leq):
            raise StructuralError("order matrix does not match the point count")
        if len(self.g) != k or any(not 0 <= v < k for v in self.g):
            raise StructuralError("g is not a total map on points")
        if len(self.f) != (self.n - 1) * (self.m - 1):
            raise StructuralError(f"expected {(self.n - 1) * (self.m - 1)} f tables")
        for t in self.f:
            if len(t) != k or any(not 0 <= v < k for v in t):
                raise StructuralError("an f table is not a total map on points")
        if self.E.size != k:
            raise StructuralError("equivalence E does not cover the points")

    @property
    def size(self) -> int:
        return len(self.names)

    @property
    def indices(self) -> list:
        return sigma_indices(self.n, self.m)

    def fij(self, i: int, j: int) -> tuple:
        return self.f[self.indices.index((i, j))]

    @property
    def full(self) -> int:
        return (1 << self.size) - 1

    def saturate(self, U: int) -> int:
        """Union of the E-classes meeting U."""
        out = 0
        for x in members(U):
            out |= self.E.class_mask(x)
        return out


def preimage(table, U: int) -> int:
    return mask_of(x for x, v in enumerate(table) if U >> v & 1)


def image(table, U: int) -> int:
    return mask_of(table[x] for x in members(U))


def check_mlm_space(X: MlmSpace, caps: Caps = DEFAULT_CAPS) -> Report:
    report = Report()
    leq, g, k = X.leq, X.g, X.size
    report.extend(check_poset(leq))
    idx = X.indices
    for x in range(k):
        if g[g[x]] != x:
            report.add("E1", (x,), "g is not an involution")
    for x, y in product(range(k), repeat=2):
        if leq[x][y] and not leq[g[y]][g[x]]:
            report.add("E1", (x, y), "g is not order-reversing")
    for (i, j), f in zip(idx, X.f):
        for x, y in product(range(k), repeat=2):
            if leq[x][y] and not leq[f[x]][f[y]]:
                report.add("E2", (i, j, x, y))
        for x in range(k):
            if i + 1 <= X.n - 1 and not leq[f[x]][X.fij(i + 1, j)[x]]:
                report.add("E3", (i, j, x))
            if j + 1 <= X.m - 1 and not leq[f[x]][X.fij(i, j + 1)[x]]:
                report.add("E4", (i, j, x))
            for (r, s), h in zip(idx, X.f):
                if f[h[x]] != f[x]:
                    report.add("E5", (i, j, r, s, x))
            if f[g[x]] != f[x]:
                report.add("E6", (i, j, x))
            if g[f[x]] != X.fij(X.n - i, X.m - j)[x]:
                report.add("E7", (i, j, x))
    if report.ok:
        ups = enumerate_upsets(leq, caps)
        seen = {}
        for U in ups:
            key = tuple(preimage(f, U) for f in X.f)
            if key in seen:
                report.add("E8", (seen[key], U), "up-sets not separated")
            seen.setdefault(key, U)
        for U in ups:
            V = X.saturate(U)
            if not is_upset(leq, V):
                report.add("ml1", (U,))
            for (i, j), f in zip(idx, X.f):
                if preimage(f, V) != X.saturate(preimage(f, U)):
                    report.add("ml3", (i, j, U))
    report.notes.append("ml2: equivalence classes are closed (automatic on a finite space)")
    return report


# --------------------------------------------------------------------------
# algebra of a space


def _mask_name(names, U: int) -> str:
    return "{" + ",".join(names[x] for x in members(U)) + "}"


def dual_algebra(X: MlmSpace, caps: Caps = DEFAULT_CAPS) -> LmAlgebra:
    """Up-sets of X with ~U = X - g^-1(U), sigma_ij U = f_ij^-1(U), exists = E-saturation."""
    rep = check_mlm_space(X, caps)
    if not rep.ok:
        raise Rejected(f"not an mlm-space: {rep.laws()}")
    ups = enumerate_upsets(X.leq, caps)
    where = {U: t for t, U in enumerate(ups)}
    meet = tuple(tuple(where[U & V] for V in ups) for U in ups)
    join = tuple(tuple(where[U | V] for V in ups) for U in ups)
    neg = tuple(where[X.full & ~preimage(X.g, U)] for U in ups)
    sigma = tuple(tuple(where[preimage(f, U)] for U in ups) for f in X.f)
    exists = tuple(where[X.saturate(U)] for U in ups)
    names = tuple(_mask_name(X.names, U) for U in ups)
    D = LmAlgebra(names, meet, join, neg, X.n, X.m, sigma, exists)
    if not check_lm_axioms(D).ok or not check_quantifier(D, D.exists).ok:
        raise ConsistencyError("dual of a valid space fails the algebra axioms")
    return D


def upsets_of_dual(X: MlmSpace, caps: Caps = DEFAULT_CAPS) -> list:
    return enumerate_upsets(X.leq, caps)


# --------------------------------------------------------------------------
# space of an algebra


def prime_filters(L: LmAlgebra) -> list:
    """Proper prime lattice filters, ascending by mask (finite filters are principal)."""
    out = []
    for F in sorted(set(L.up)):
        if F >> L.zero & 1:
            continue
        xs = members(F)
        if any(not F >> L.meet[a][b] & 1 for a in xs for b in xs):
            continue
        prime = all(F >> a & 1 or F >> b & 1
                    for a in range(L.size) for b in range(L.size) if F >> L.join[a][b] & 1)
        if prime:
            out.append(F)
    return out


def spectrum(L: LmAlgebra, caps: Caps = DEFAULT_CAPS) -> MlmSpace:
    caps.require("carrier", L.size)
    if L.size < 2:
        raise Rejected("spectrum needs at least two elements")
    if L.exists is None:
        raise Rejected("spectrum needs a monadic algebra")
    pts = prime_filters(L)
    where = {P: t for t, P in enumerate(pts)}
    leq = tuple(tuple(P & ~Q == 0 for Q in pts) for P in pts)
    g = []
    for P in pts:
        negs = mask_of(L.neg[x] for x in members(P))
        g.append(where[L.full & ~negs])
    f = tuple(tuple(where[preimage(t, P)] for P in pts) for t in L.sigma)
    rng = mask_of(L.exists)
    E = Partition.from_key(len(pts), lambda t: pts[t] & rng)
    names = tuple(_mask_name(L.names, P) for P in pts)
    X = MlmSpace(names, leq, tuple(g), f, E, L.n, L.m)
    rep = check_mlm_space(X, caps)
    if not rep.ok:
        raise ConsistencyError(f"spectrum fails {rep.laws()}")
    for a in range(L.size):
        if not is_upset(leq, sigma_L(L, X, a, pts)):
            raise ConsistencyError(f"sigma_L({L.names[a]}) is not an up-set")
    return X


def sigma_L(L: LmAlgebra, X: MlmSpace, a: int, pts=None) -> int:
    """Points (prime filters) containing ``a``."""
    pts = prime_filters(L) if pts is None else pts
    return mask_of(t for t, P in enumerate(pts) if P >> a & 1)


# --------------------------------------------------------------------------
# round trips


@dataclass
class IsoCertificate:
    map: tuple
    report: Report

    @property
    def ok(self) -> bool:
        return self.report.ok


def roundtrip_check(L: LmAlgebra, caps: Caps = DEFAULT_CAPS) -> IsoCertificate:
    """sigma_L : L -> dual(spectrum(L)) is a bijection preserving every operation."""
    X = spectrum(L, caps)
    D = dual_algebra(X, caps)
    pts = prime_filters(L)
    ups = enumerate_upsets(X.leq, caps)
    where = {U: t for t, U in enumerate(ups)}
    report = Report()
    fmap = []
    for a in range(L.size):
        U = sigma_L(L, X, a, pts)
        if U not in where:
            report.add("image-upset", (a,))
            fmap.append(0)
        else:
            fmap.append(where[U])
    fmap = tuple(fmap)
    if len(set(fmap)) != L.size or len(ups) != L.size:
        report.add("bijective")
    report.extend(preservation_report(L.algebra, D.algebra, fmap, L.mlm_signature))
    return IsoCertificate(fmap, report)


def space_isomorphism(X: MlmSpace, Y: MlmSpace):
    """A point bijection preserving order, g, every f_ij and E, or None."""
    if X.size != Y.size or (X.n, X.m) != (Y.n, Y.m):
        return None
    k = X.size
    phi = [None] * k
    used = [False] * k
    up_x = [sum(r) for r in X.leq]
    up_y = [sum(r) for r in Y.leq]

    def consistent(x):
        for z in range(k):
            if phi[z] is None:
                continue
            if X.leq[x][z] != Y.leq[phi[x]][phi[z]] or X.leq[z][x] != Y.leq[phi[z]][phi[x]]:
                return False
            if X.E.same(x, z) != Y.E.same(phi[x], phi[z]):
                return False
        for tx, ty in [(X.g, Y.g)] + list(zip(X.f, Y.f)):
            for z in range(k):
                if phi[z] is not None and phi[tx[z]] is not None and phi[tx[z]] != ty[phi[z]]:
                    return False
        return True

    def rec(x):
        if x == k:
            return True
        for y in range(k):
            if used[y] or up_x[x] != up_y[y]:
                continue
            phi[x] = y
            used[y] = True
            if consistent(x) and rec(x + 1):
                return True
            phi[x] = None
            used[y] = False
        return False

    return tuple(phi) if rec(0) else None


def space_roundtrip_check(X: MlmSpace, caps: Caps = DEFAULT_CAPS) -> IsoCertificate:
    """x -> {U : x in U} identifies X with the spectrum of its dual algebra."""
    D = dual_algebra(X, caps)
    Y = spectrum(D, caps)
    ups = enumerate_upsets(X.leq, caps)
    pts = prime_filters(D)
    where = {P: t for t, P in enumerate(pts)}
    report = Report()
    canon = []
    for x in range(X.size):
        P = mask_of(t for t, U in enumerate(ups) if U >> x & 1)
        canon.append(where.get(P, -1))
    canon = tuple(canon)
    if -1 in canon or len(set(canon)) != X.size or Y.size != X.size:
        report.add("point-bijection")
    else:
        for x, z in product(range(X.size), repeat=2):
            if X.leq[x][z] != Y.leq[canon[x]][canon[z]]:
                report.add("order", (x, z))
            if X.E.same(x, z) != Y.E.same(canon[x], canon[z]):
                report.add("E", (x, z))
        for tx, ty, nm in [(X.g, Y.g, "g")] + [(a, b, "f") for a, b in zip(X.f, Y.f)]:
            for x in range(X.size):
                if canon[tx[x]] != ty[canon[x]]:
                    report.add(nm, (x,))
    if space_isomorphism(X, Y) is None:
        report.add("search", (), "no isomorphism found by exhaustive search")
    return IsoCertificate(canon, report)


# --------------------------------------------------------------------------
# congruences as subsets of the space


def is_closed_semimodal(X: MlmSpace, Y: int) -> bool:
    if image(X.g, Y) != Y:
        return False
    if any(Y & ~preimage(f, Y) for f in X.f):
        return False
    return X.saturate(Y) == Y


def theta_of(L: LmAlgebra, X: MlmSpace, Y: int, pts=None) -> Partition:
    pts = prime_filters(L) if pts is None else pts
    sig = [sigma_L(L, X, a, pts) for a in range(L.size)]
    return Partition.from_key(L.size, lambda a: sig[a] & Y)


@dataclass
class SemimodalResult:
    space: MlmSpace
    sets: list
    congruences: list  # Theta of each set, aligned


def closed_semimodal_sets(L: LmAlgebra, caps: Caps = DEFAULT_CAPS) -> SemimodalResult:
    """All involutive, semimodal, E-saturated point sets and their congruences."""
    X = spectrum(L, caps)
    caps.require("upsets", X.size)
    pts = prime_filters(L)
    sets = [Y for Y in range(1 << X.size) if is_closed_semimodal(X, Y)]
    thetas = [theta_of(L, X, Y, pts) for Y in sets]
    cons = all_congruences(L, caps).elements
    if sorted(set(thetas), key=lambda p: p.block_of) != sorted(cons, key=lambda p: p.block_of) \
            or len(set(thetas)) != len(sets):
        raise ConsistencyError("Theta is not a bijection onto the monadic congruences")
    for (Y1, t1), (Y2, t2) in product(list(zip(sets, thetas)), repeat=2):
        if (Y1 & ~Y2 == 0) != t2.refines(t1):
            raise ConsistencyError("Theta is not order-reversing")
    for Y, th in zip(sets, thetas):
        one = th.class_mask(L.one)
        back = mask_of(t for t, P in enumerate(pts) if one & ~P == 0)
        if back != Y:
            raise ConsistencyError("inverse of Theta does not recover the point set")
    return SemimodalResult(X, sets, thetas)


@dataclass
class PrincipalSubset:
    points: int
    lhs: int
    rhs: int
    normalized: tuple
    note: str = ""


def principal_subset(L: LmAlgebra, a: int, b: int, caps: Caps = DEFAULT_CAPS) -> PrincipalSubset:
    """sigma_L(forall(a+b)) computed both directly and through the space."""
    note = ""
    if not L.leq[a][b]:
        a, b = L.meet[a][b], L.join[a][b]
        note = "normalized to (a&b, a|b)"
    X = spectrum(L, caps)
    pts = prime_filters(L)
    lhs = sigma_L(L, X, L.forall[delta(L, a, b)], pts)
    diff = X.saturate(sigma_L(L, X, b, pts) & ~sigma_L(L, X, a, pts))
    union = 0
    for f in X.f:
        union |= preimage(f, diff)
    rhs = X.full & ~union
    if lhs != rhs:
        raise ConsistencyError(f"set equation fails for ({L.names[a]},{L.names[b]})")
    if not is_closed_semimodal(X, lhs):
        raise ConsistencyError("principal subset is not closed semimodal")
    if theta_of(L, X, lhs, pts) != principal_congruence(L, a, b):
        raise ConsistencyError("Theta of the principal subset differs from theta(a,b)")
    return PrincipalSubset(lhs, lhs, rhs, (a, b), note)
