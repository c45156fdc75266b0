"""Functional representations: monotone grids, functional powers, constants.

Grid elements are tuples of base-algebra indices listed in row-major order of
the sigma index pairs.  Functional algebras are never materialised when only
the image of an embedding is needed; images are kept as tuples of values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .core import (
    DEFAULT_CAPS, Caps, ConsistencyError, Morphism, Partition, Rejected, Report,
    StructuralError, enumerate_endomorphisms, enumerate_homomorphisms, mask_of, members,
    preservation_report,
)
from .lm import (
    LmAlgebra, boolean_center, is_centred, relation_of_filter, sigma_indices, subalgebra,
)


def _check_boolean(B: LmAlgebra) -> None:
    N = B.size
    for x in range(N):
        y = B.neg[x]
        if B.meet[x][y] != B.zero or B.join[x][y] != B.one:
            raise Rejected(f"base algebra is not Boolean: {B.names[x]} has no complement")


def _monotone_grids(k: int, n: int, m: int, leq) -> list:
    idx = sigma_indices(n, m)
    pos = {ij: p for p, ij in enumerate(idx)}
    grid = [0] * len(idx)
    out = []

    def rec(p: int):
        if p == len(idx):
            out.append(tuple(grid))
            return
        i, j = idx[p]
        for v in range(k):
            if i > 1 and not leq[grid[pos[(i - 1, j)]]][v]:
                continue
            if j > 1 and not leq[grid[pos[(i, j - 1)]]][v]:
                continue
            grid[p] = v
            rec(p + 1)

    rec(0)
    return sorted(out)


def grid_power(B: LmAlgebra, n: int, m: int, caps: Caps = DEFAULT_CAPS) -> LmAlgebra:
    """All grids monotone in both coordinates, valued in the Boolean algebra ``B``.

    Lattice operations are pointwise, ``(~f)(i,j)`` is the complement of
    ``f(n-i, m-j)``, ``sigma_ij f`` is constant at ``f(i,j)``, and a quantifier
    on ``B`` (if any) acts entrywise.
    """
    _check_boolean(B)
    grids = _monotone_grids(B.size, n, m, B.leq)
    caps.require("carrier", len(grids))
    idx = sigma_indices(n, m)
    pos = {ij: p for p, ij in enumerate(idx)}
    where = {g: k for k, g in enumerate(grids)}

    def point(op):
        return tuple(tuple(where[tuple(op[a][b] for a, b in zip(f, g))] for g in grids)
                     for f in grids)

    meet, join = point(B.meet), point(B.join)
    neg = tuple(where[tuple(B.neg[f[pos[(n - i, m - j)]]] for (i, j) in idx)] for f in grids)
    sigma = tuple(tuple(where[(f[pos[ij]],) * len(idx)] for f in grids) for ij in idx)
    exists = None
    if B.exists is not None:
        exists = tuple(where[tuple(B.exists[v] for v in f)] for f in grids)
    if B.size == 2 and B.names == ("0", "1"):
        names = tuple("".join(B.names[v] for v in f) for f in grids)
    else:
        names = tuple("[" + ",".join(B.names[v] for v in f) + "]" for f in grids)
    return LmAlgebra(names, meet, join, neg, n, m, sigma, exists)


def functional_power(B: LmAlgebra, points: int, n: int, m: int,
                     caps: Caps = DEFAULT_CAPS) -> LmAlgebra:
    """Maps from a ``points``-element set into the grid power of ``B``.

    Operations are pointwise; the quantifier sends a map to the constant map
    at the join of its values.
    """
    if points < 1:
        raise Rejected("index set must be non-empty")
    G = grid_power(B.reduct(), n, m, caps)
    k = G.size
    caps.require("carrier", k ** points)
    elems = list(product(range(k), repeat=points))
    where = {e: t for t, e in enumerate(elems)}

    def point2(op):
        return tuple(tuple(where[tuple(op[a][b] for a, b in zip(f, g))] for g in elems)
                     for f in elems)

    def point1(op):
        return tuple(where[tuple(op[a] for a in f)] for f in elems)

    exists = tuple(where[(G.join_all(f),) * points] for f in elems)
    names = tuple("<" + "|".join(G.names[a] for a in f) + ">" for f in elems)
    return LmAlgebra(names, point2(G.meet), point2(G.join), point1(G.neg), n, m,
                     tuple(point1(t) for t in G.sigma), exists)


def boolean_center_algebra(L: LmAlgebra):
    """``B(L)`` as a (monadic, when L is) Boolean algebra of type 2x2."""
    return subalgebra(L, boolean_center(L), n=2, m=2)


# --------------------------------------------------------------------------
# the sigma-profile embedding


@dataclass
class TauResult:
    target: LmAlgebra
    morphism: Morphism
    report: Report
    centred: object

    @property
    def injective(self) -> bool:
        return self.morphism.injective

    @property
    def surjective(self) -> bool:
        return self.morphism.surjective


def tau_embedding(L: LmAlgebra, caps: Caps = DEFAULT_CAPS) -> TauResult:
    """x -> (sigma_ij x)_(i,j) into the grid power of the Boolean center."""
    BL, emb = boolean_center_algebra(L)
    G = grid_power(BL, L.n, L.m, caps)
    inv = {x: k for k, x in enumerate(emb)}
    # grid algebra elements are indexed in sorted grid order
    grids = _monotone_grids(BL.size, L.n, L.m, BL.leq)
    gpos = {g: k for k, g in enumerate(grids)}
    fmap = tuple(gpos[tuple(inv[t[x]] for t in L.sigma)] for x in range(L.size))
    mor = Morphism(L.algebra, G.algebra, fmap)
    sig = L.mlm_signature if L.exists is not None else L.lm_signature
    report = mor.preserves_signature(sig)
    if not mor.injective:
        report.add("injective")
    centred = is_centred(L)
    if mor.surjective != (centred is not None):
        raise ConsistencyError("tau surjectivity disagrees with centredness")
    return TauResult(G, mor, report, centred)


# --------------------------------------------------------------------------
# constants and richness


def constants(L: LmAlgebra, caps: Caps = DEFAULT_CAPS, restrict: bool = True) -> list:
    """LM endomorphisms c with c.exists == exists and exists.c == c, as image tuples.

    With ``restrict`` the endomorphism search only tries images in the range of
    the quantifier and pins that range pointwise, which both conditions force.
    """
    if L.exists is None:
        raise Rejected("constants need a quantifier")
    q = L.exists
    rng = mask_of(q)
    cand = None
    if restrict:
        cand = [[x] if rng >> x & 1 else members(rng) for x in range(L.size)]
    endos = enumerate_endomorphisms(L.algebra, L.lm_signature, caps, cand)
    out = []
    for e in endos:
        c = e.map
        if all(c[q[x]] == q[x] for x in range(L.size)) and \
                all(q[c[x]] == c[x] for x in range(L.size)):
            out.append(c)
    for c in out:
        for x in range(L.size):
            if c[c[x]] != c[x]:
                raise ConsistencyError(f"constant {c} is not idempotent")
            if not L.leq[c[x]][q[x]]:
                raise ConsistencyError(f"constant {c} exceeds the quantifier at {x}")
    return out


def witnesses(L: LmAlgebra, x: int, consts=None) -> list:
    cs = constants(L) if consts is None else consts
    return [c for c in cs if c[x] == L.exists[x]]


def unwitnessed(L: LmAlgebra, consts=None) -> list:
    cs = constants(L) if consts is None else consts
    return [x for x in range(L.size) if not any(c[x] == L.exists[x] for c in cs)]


def is_rich(L: LmAlgebra, consts=None) -> bool:
    return not unwitnessed(L, consts)


@dataclass
class FunctionalEmbedding:
    """Images ``x -> (value at c)_c`` over an explicit list of constants."""

    constants: list
    images: list
    report: Report = field(default_factory=Report)

    @property
    def injective(self) -> bool:
        return len(set(self.images)) == len(self.images)


def omega_embedding(L: LmAlgebra, consts=None, caps: Caps = DEFAULT_CAPS) -> FunctionalEmbedding:
    """x -> (c(x))_c into the functional power of the quantifier range."""
    cs = constants(L, caps) if consts is None else list(consts)
    missing = unwitnessed(L, cs)
    if missing:
        raise Rejected(f"not rich: {L.names[missing[0]]} has no witness")
    N = L.size
    img = [tuple(c[x] for c in cs) for x in range(N)]
    report = Report()
    if len(set(img)) != N:
        report.add("injective")
    rng = mask_of(L.exists)
    K = len(cs)
    for x in range(N):
        if any(not rng >> v & 1 for v in img[x]):
            report.add("range", (x,))
        for y in range(N):
            if img[L.meet[x][y]] != tuple(L.meet[img[x][k]][img[y][k]] for k in range(K)):
                report.add("meet", (x, y))
            if img[L.join[x][y]] != tuple(L.join[img[x][k]][img[y][k]] for k in range(K)):
                report.add("join", (x, y))
        if img[L.neg[x]] != tuple(L.neg[v] for v in img[x]):
            report.add("neg", (x,))
        for (i, j), s in zip(L.indices, L.sigma):
            if img[s[x]] != tuple(s[v] for v in img[x]):
                report.add(f"s{i},{j}", (x,))
        # supremum of the coordinates is the quantifier
        if L.join_all(img[x]) != L.exists[x]:
            report.add("supremum", (x,))
        if img[L.exists[x]] != (L.exists[x],) * K:
            report.add("exists", (x,))
        all_one = all(v == L.one for v in img[x])
        if all_one != (x == L.one):
            report.add("unit-detection", (x,))
    if img[L.zero] != (L.zero,) * K or img[L.one] != (L.one,) * K:
        report.add("bounds")
    return FunctionalEmbedding(cs, img, report)


def _boolean_constants(B: LmAlgebra, caps: Caps) -> list:
    return constants(B, caps)


def psi_embedding(L: LmAlgebra, B_rich: LmAlgebra = None, embedding=None, consts=None,
                  caps: Caps = DEFAULT_CAPS) -> FunctionalEmbedding:
    """x -> ((c(sigma_ij x))_(i,j))_c over constants of a rich monadic Boolean algebra.

    ``B_rich`` defaults to the Boolean center of ``L`` (with ``embedding`` the
    identity), which must then be rich itself.  ``embedding`` lists, for each
    element of the Boolean center in index order, its image in ``B_rich``.
    """
    if L.exists is None:
        raise Rejected("psi needs a quantifier")
    BL, bl_emb = boolean_center_algebra(L)
    if B_rich is None:
        B_rich, embedding = BL, tuple(range(BL.size))
    _check_boolean(B_rich)
    if B_rich.exists is None:
        raise Rejected("rich Boolean algebra must carry a quantifier")
    if embedding is None or len(embedding) != BL.size:
        raise StructuralError("embedding of the Boolean center not supplied")
    bad = preservation_report(BL.algebra, B_rich.algebra, embedding, BL.mlm_signature)
    if not bad.ok or len(set(embedding)) != BL.size:
        raise StructuralError("Boolean center is not a subalgebra of the rich algebra")
    cs = _boolean_constants(B_rich, caps) if consts is None else list(consts)
    if unwitnessed(B_rich, cs):
        raise Rejected("supplied Boolean algebra is not rich")

    inv = {x: k for k, x in enumerate(bl_emb)}
    e = [embedding[inv[x]] if x in inv else None for x in range(L.size)]
    idx = L.indices
    pos = {ij: p for p, ij in enumerate(idx)}
    n, m = L.n, L.m
    bq = B_rich.exists
    N, K = L.size, len(cs)

    def psi(x):
        return tuple(tuple(c[e[t[x]]] for t in L.sigma) for c in cs)

    img = [psi(x) for x in range(N)]
    report = Report()
    if len(set(img)) != N:
        report.add("injective")
    bm, bj, bn = B_rich.meet, B_rich.join, B_rich.neg
    for x in range(N):
        for y in range(N):
            want = tuple(tuple(bm[a][b] for a, b in zip(fx, fy)) for fx, fy in zip(img[x], img[y]))
            if img[L.meet[x][y]] != want:
                report.add("meet", (x, y))
            want = tuple(tuple(bj[a][b] for a, b in zip(fx, fy)) for fx, fy in zip(img[x], img[y]))
            if img[L.join[x][y]] != want:
                report.add("join", (x, y))
        want = tuple(tuple(bn[g[pos[(n - i, m - j)]]] for (i, j) in idx) for g in img[x])
        if img[L.neg[x]] != want:
            report.add("neg", (x,))
        for (r, s_), t in zip(idx, L.sigma):
            want = tuple((g[pos[(r, s_)]],) * len(idx) for g in img[x])
            if img[t[x]] != want:
                report.add(f"s{r},{s_}", (x,))
        # g_l(i,j) = exists sigma_ij l, the pointwise supremum over constants
        g_l = tuple(bq[e[t[x]]] for t in L.sigma)
        sup = tuple(B_rich.join_all(g[p] for g in img[x]) for p in range(len(idx)))
        if sup != g_l:
            report.add("supremum", (x,))
        if img[L.exists[x]] != (g_l,) * K:
            report.add("exists", (x,))
    zero_grid = (B_rich.zero,) * len(idx)
    one_grid = (B_rich.one,) * len(idx)
    if img[L.zero] != (zero_grid,) * K or img[L.one] != (one_grid,) * K:
        report.add("bounds")
    return FunctionalEmbedding(cs, img, report)


# --------------------------------------------------------------------------
# interval algebras and the filter characterisation of richness


def interval_algebra(L: LmAlgebra, b: int):
    """``[0, b]`` with relative complement ``~x & b``; returns ``(algebra, h_b)``."""
    bc = boolean_center(L)
    if not bc >> b & 1:
        raise Rejected(f"{L.names[b]} is not a Boolean element")
    carrier = [x for x in range(L.size) if L.leq[x][b]]
    pos = {x: k for k, x in enumerate(carrier)}
    meet = tuple(tuple(pos[L.meet[x][y]] for y in carrier) for x in carrier)
    join = tuple(tuple(pos[L.join[x][y]] for y in carrier) for x in carrier)
    neg = tuple(pos[L.meet[L.neg[x]][b]] for x in carrier)
    sigma = tuple(tuple(pos[t[x]] for x in carrier) for t in L.sigma)
    I = LmAlgebra(tuple(L.names[x] for x in carrier), meet, join, neg, L.n, L.m, sigma)
    h = tuple(pos[L.meet[x][b]] for x in range(L.size))
    rep = preservation_report(L.algebra, I.algebra, h, L.lm_signature)
    if not rep.ok:
        raise ConsistencyError(f"h_b fails to preserve {rep.laws()}")
    kernel = Partition.from_key(L.size, lambda x: h[x])
    if kernel != relation_of_filter(L, L.up[b]):
        raise ConsistencyError("kernel of h_b differs from R(F(b))")
    return I, h


@dataclass
class RichnessCertificate:
    rich: bool
    bounds: dict  # element -> Boolean b, or None


def richness_via_filters(L: LmAlgebra, consts=None, caps: Caps = DEFAULT_CAPS) -> RichnessCertificate:
    """For each x a Boolean b with h_b a bijection on the quantifier range fixing x's class."""
    caps.require("carrier", L.size)
    if L.exists is None:
        raise Rejected("richness needs a quantifier")
    rng = mask_of(L.exists)
    E, emb = subalgebra(L, rng, use_exists=False)
    intervals = {b: interval_algebra(L, b) for b in members(boolean_center(L))}
    good_b = []
    for b, (I, h) in intervals.items():
        img = tuple(h[x] for x in emb)
        if len(set(img)) != I.size or len(img) != I.size:
            continue
        if preservation_report(E.algebra, I.algebra, img, E.lm_signature).ok:
            good_b.append(b)
    bounds = {}
    for x in range(L.size):
        found = None
        for b in good_b:
            h = intervals[b][1]
            if h[L.exists[x]] == h[x]:
                found = b
                break
        bounds[x] = found
    rich = all(v is not None for v in bounds.values())
    if rich != is_rich(L, consts if consts is not None else constants(L, caps)):
        raise ConsistencyError("filter characterisation of richness disagrees with witnesses")
    return RichnessCertificate(rich, bounds)


# --------------------------------------------------------------------------
# the commuting square between the three representations


@dataclass
class DiagramReport:
    constants_L: list
    constants_B: list
    lhs: list
    rhs: list
    report: Report


def commuting_diagram_check(L: LmAlgebra, caps: Caps = DEFAULT_CAPS) -> DiagramReport:
    """Checks that restricting Omega through tau matches Psi, pointwise."""
    cs = constants(L, caps)
    if unwitnessed(L, cs):
        raise Rejected("commuting square needs a rich algebra")
    om = omega_embedding(L, cs, caps)
    BL, bl_emb = boolean_center_algebra(L)
    inv = {x: k for k, x in enumerate(bl_emb)}
    # restrictions of the constants to the Boolean center, in BL indices
    restr = [tuple(inv[c[x]] for x in bl_emb) for c in cs]
    cb = sorted(set(restr))
    report = Report()
    if not all(c in set(constants(BL, caps)) for c in cb):
        raise ConsistencyError("a restricted constant is not a constant of the Boolean center")
    if unwitnessed(BL, cb):
        raise ConsistencyError("restricted constants do not witness every Boolean element")
    lhs = []
    for x in range(L.size):
        # tau* applied to Omega(x): per constant, the grid of sigma values
        per_c = [tuple(inv[t[v]] for t in L.sigma) for v in om.images[x]]
        # P: reindex by restriction; defined only if constants with the same
        # restriction agree
        by_r = {}
        for r, g in zip(restr, per_c):
            if by_r.setdefault(r, g) != g:
                report.add("P-well-defined", (x,))
        lhs.append(tuple(by_r[r] for r in cb))
    psi = psi_embedding(L, BL, tuple(range(BL.size)), cb, caps)
    report.extend(psi.report)
    for x in range(L.size):
        if lhs[x] != psi.images[x]:
            report.add("commute", (x,))
    return DiagramReport(cs, cb, lhs, psi.images, report)
