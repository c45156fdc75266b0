"""Monadic congruences, ms-filters, principal congruences and the discriminator.

Every closed-form description here is paired with the brute-force oracle from
:mod:`lmworkbench.core` (worklist congruence closure) and the two are compared
set-wise on canonical partitions.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .core import (
    DEFAULT_CAPS, Caps, ConsistencyError, Partition, Rejected, Report, congruence_closure,
    is_compatible, mask_of, members, popcount,
)
from .lm import (
    LmAlgebra, boolean_center, deductive_system_generated, deductive_systems, delta,
    delta_table, filter_generated, is_stone_filter, relation_of_filter, stone_filters,
    subalgebra, subalgebra_closure,
)


def _require_monadic(L: LmAlgebra) -> None:
    if L.exists is None:
        raise Rejected("operation needs a monadic algebra (exists table missing)")


@dataclass
class CongruenceLattice:
    elements: list  # canonical partitions, sorted by block arrays

    def leq(self, a: int, b: int) -> bool:
        return self.elements[a].refines(self.elements[b])

    def __len__(self):
        return len(self.elements)

    def __contains__(self, p):
        return p in set(self.elements)


def _sorted_parts(parts) -> list:
    return sorted(set(parts), key=lambda p: (-p.n_blocks, p.block_of))


# --------------------------------------------------------------------------
# ms-filters


def is_ms_filter(L: LmAlgebra, F: int) -> bool:
    _require_monadic(L)
    a = L.forall
    return is_stone_filter(L, F) and all(F >> a[x] & 1 for x in members(F))


def ms_filters(L: LmAlgebra, caps: Caps = DEFAULT_CAPS) -> list:
    """Stone filters closed under the universal quantifier, cross-checked as m.d.s."""
    _require_monadic(L)
    a = L.forall
    out = [F for F in stone_filters(L, caps) if all(F >> a[x] & 1 for x in members(F))]
    mds = [D for D in deductive_systems(L, caps) if all(D >> a[x] & 1 for x in members(D))]
    if out != mds:
        raise ConsistencyError("ms-filters differ from monadic deductive systems")
    return out


def congruence_from_filter(L: LmAlgebra, F: int) -> Partition:
    _require_monadic(L)
    if not is_stone_filter(L, F):
        raise Rejected(f"{L.name_set(F)} is not a Stone filter")
    if not is_ms_filter(L, F):
        raise Rejected(f"{L.name_set(F)} is not closed under the universal quantifier")
    part = relation_of_filter(L, F)
    if not is_compatible(L.algebra, part):
        raise ConsistencyError(f"R(F) for {L.name_set(F)} is not a monadic congruence")
    return part


def one_class(part: Partition, L: LmAlgebra) -> int:
    return part.class_mask(L.one)


# --------------------------------------------------------------------------
# the oracle


def oracle_congruences(L: LmAlgebra, caps: Caps = DEFAULT_CAPS) -> list:
    """All congruences of the full signature: principal closures, then joins."""
    caps.require("carrier", L.size)
    alg = L.algebra
    N = L.size
    principal = {congruence_closure(alg, [(a, b)]) for a in range(N) for b in range(a, N)}
    found = set(principal)
    frontier = set(principal)
    while frontier:
        new = set()
        for p in frontier:
            for q in principal:
                j = congruence_closure(alg, [(x, y) for x, y in p.pairs() if x < y] +
                                       [(x, y) for x, y in q.pairs() if x < y])
                if j not in found:
                    new.add(j)
        found |= new
        frontier = new
    return _sorted_parts(found)


def all_congruences(L: LmAlgebra, caps: Caps = DEFAULT_CAPS) -> CongruenceLattice:
    """R(F) over all ms-filters; equal to the oracle set and order-isomorphic to the filters."""
    _require_monadic(L)
    filters = ms_filters(L, caps)
    parts = [congruence_from_filter(L, F) for F in filters]
    oracle = oracle_congruences(L, caps)
    if set(parts) != set(oracle):
        raise ConsistencyError(
            f"{len(set(parts))} filter congruences vs {len(oracle)} oracle congruences")
    for F, p in zip(filters, parts):
        if one_class(p, L) != F:
            raise ConsistencyError(f"[1] of R(F) differs from F={L.name_set(F)}")
    for th in oracle:
        if relation_of_filter(L, one_class(th, L)) != th:
            raise ConsistencyError("R([1]) differs from the congruence")
    for (F1, p1), (F2, p2) in product(list(zip(filters, parts)), repeat=2):
        if (F1 & ~F2 == 0) != p1.refines(p2):
            raise ConsistencyError("filter inclusion and congruence order disagree")
    return CongruenceLattice(_sorted_parts(parts))


def monadic_ds_generated(L: LmAlgebra, H: int, caps: Caps = DEFAULT_CAPS) -> int:
    """F(sigma11 forall H), checked against the least ms-filter above H and D(forall H)."""
    _require_monadic(L)
    a = L.forall
    s11 = L.s(1, 1)
    F = filter_generated(L, mask_of(s11[a[h]] for h in members(H)))
    above = [G for G in ms_filters(L, caps) if H & ~G == 0]
    least = L.full
    for G in above:
        least &= G
    via_ds = deductive_system_generated(L, mask_of(a[h] for h in members(H)))
    if not (F == least == via_ds):
        raise ConsistencyError(f"generated m.d.s. routes disagree for {L.name_set(H)}")
    return F


# --------------------------------------------------------------------------
# the four filter lattices


@dataclass
class GammaReport:
    posets: dict  # name -> list of masks
    report: Report


def _is_order_iso(dom: list, cod: list, f) -> bool:
    img = [f(x) for x in dom]
    if sorted(img) != sorted(cod) or len(set(img)) != len(dom):
        return False
    for x, y in product(range(len(dom)), repeat=2):
        if (dom[x] & ~dom[y] == 0) != (img[x] & ~img[y] == 0):
            return False
    return True


def gamma_diagram(L: LmAlgebra, caps: Caps = DEFAULT_CAPS) -> GammaReport:
    """Intersection maps between the four filter lattices; all order isomorphisms, square commutes."""
    _require_monadic(L)
    rng = mask_of(L.exists)
    bc = boolean_center(L)
    brng = rng & bc
    a = L.forall
    dm = ms_filters(L, caps)
    E, emb = subalgebra(L, rng, use_exists=False)
    d_e = sorted(mask_of(emb[x] for x in members(f)) for f in stone_filters(E, caps))
    # filters of a finite Boolean algebra are principal
    f_b = sorted({L.up[b] & bc for b in members(bc)})
    fm_b = [f for f in f_b if all(f >> a[x] & 1 for x in members(f))]
    f_be = sorted({L.up[b] & brng for b in members(brng)})
    report = Report()
    g1 = lambda D: D & rng  # noqa: E731
    g2 = lambda D: D & bc  # noqa: E731
    g3 = lambda D: D & brng  # noqa: E731
    for name, dom, cod, g in (("gamma1", dm, d_e, g1), ("gamma2", dm, fm_b, g2),
                              ("gamma3", d_e, f_be, g3), ("gamma4", fm_b, f_be, g3)):
        if not _is_order_iso(dom, cod, g):
            report.add(name, (), "not an order isomorphism")
    for D in dm:
        if g3(g1(D)) != g3(g2(D)):
            report.add("commute", (D,))
    posets = {"Dm(L)": dm, "D(E(L))": d_e, "Fm(B(L))": fm_b, "F(B(E(L)))": f_be}
    return GammaReport(posets, report)


# --------------------------------------------------------------------------
# simplicity


@dataclass
class SimplicityVerdict:
    simple: bool
    degenerate: bool
    conditions: dict  # name -> bool
    certificate: object = None


def _atoms_of(L: LmAlgebra, mask: int) -> list:
    xs = [x for x in members(mask) if x != L.zero]
    return [x for x in xs if not any(y != x and L.leq[y][x] for y in xs)]


def is_simple(L: LmAlgebra, caps: Caps = DEFAULT_CAPS) -> SimplicityVerdict:
    """Evaluates the four equivalent simplicity conditions independently."""
    _require_monadic(L)
    if L.size == 1:
        return SimplicityVerdict(False, True, {})
    cons = all_congruences(L, caps)
    c1 = len(cons) == 2
    rng = mask_of(L.exists)
    E, _ = subalgebra(L, rng, use_exists=False)
    c2 = len(stone_filters(E, caps)) == 2
    c3 = popcount(rng & boolean_center(L)) == 2
    oracle = oracle_congruences(L, caps)
    nontrivial = [p for p in oracle if not p.is_identity]
    least = [p for p in nontrivial if all(p.refines(q) for q in nontrivial)]
    c4 = bool(least)
    conds = {"two-congruences": c1, "range-simple": c2, "range-center-two": c3,
             "subdirectly-irreducible": c4}
    if len(set(conds.values())) != 1:
        raise ConsistencyError(f"simplicity conditions disagree: {conds}")
    cert = least[0] if least else next((p for p in nontrivial if not p.is_total), None)
    return SimplicityVerdict(c1, False, conds, cert)


is_subdirectly_irreducible = is_simple


# --------------------------------------------------------------------------
# discriminator


def discriminator(L: LmAlgebra, x: int, y: int, z: int) -> int:
    _require_monadic(L)
    u = L.forall[delta(L, x, y)]
    return L.join[L.meet[u][z]][L.meet[L.neg[u]][x]]


def certify_discriminator(L: LmAlgebra, caps: Caps = DEFAULT_CAPS) -> Report:
    """On a simple algebra, p agrees with the ternary discriminator on all triples."""
    report = Report()
    if not is_simple(L, caps).simple:
        raise Rejected("discriminator certification needs a simple algebra")
    N = L.size
    for x, y, z in product(range(N), repeat=3):
        want = z if x == y else x
        if discriminator(L, x, y, z) != want:
            report.add("discriminator", (x, y, z))
    return report


# --------------------------------------------------------------------------
# principal congruences


def principal_congruence(L: LmAlgebra, a: int, b: int) -> Partition:
    """x ~ y iff x & forall(a+b) == y & forall(a+b), checked against the closure oracle."""
    _require_monadic(L)
    u = L.forall[delta(L, a, b)]
    part = Partition.from_key(L.size, lambda x: L.meet[x][u])
    if part != congruence_closure(L.algebra, [(a, b)]):
        raise ConsistencyError(f"principal congruence of ({a},{b}) differs from closure")
    if part != _formula_theta(L, u, L.one):
        raise ConsistencyError("theta(a,b) differs from theta(forall(a+b),1)")
    return part


def _formula_theta(L: LmAlgebra, a: int, b: int) -> Partition:
    u = L.forall[delta(L, a, b)]
    return Partition.from_key(L.size, lambda x: L.meet[x][u])


@dataclass
class PrincipalLattice:
    elements: list
    report: Report


def principal_lattice(L: LmAlgebra, caps: Caps = DEFAULT_CAPS) -> PrincipalLattice:
    _require_monadic(L)
    caps.require("carrier", L.size)
    N = L.size
    a = L.forall
    s11 = L.s(1, 1)
    report = Report()
    theta = {}
    for x in range(N):
        for y in range(N):
            theta[(x, y)] = _formula_theta(L, x, y)
    if theta[(L.one, L.one)] != Partition.identity(N):
        report.add("identity", (L.one, L.one))
    if theta[(L.zero, L.one)] != Partition.total(N):
        report.add("total", (L.zero, L.one))
    d = delta_table(L)
    for (x, y), (z, w) in product(list(theta), repeat=2):
        lhs = theta[(x, y)].meet(theta[(z, w)])
        rhs = _formula_theta(L, L.join[d[x][y]][a[d[z][w]]], L.one)
        if lhs != rhs:
            report.add("meet-formula", (x, y, z, w))
    for (x, y), th in theta.items():
        comp = _formula_theta(L, L.neg[a[d[x][y]]], L.one)
        if th.meet(comp) != Partition.identity(N) or th.join(comp) != Partition.total(N):
            report.add("complement", (x, y))
    for F in ms_filters(L, caps):
        if not any(F == L.up[a[s11[x]]] for x in range(N)):
            report.add("principal-filter-form", (F,))
    elements = _sorted_parts(theta.values())
    return PrincipalLattice(elements, report)


def count_congruences(L: LmAlgebra, caps: Caps = DEFAULT_CAPS):
    """2 ** (atoms of the Boolean part of the range); returns (count, atoms)."""
    _require_monadic(L)
    brng = mask_of(L.exists) & boolean_center(L)
    atoms = _atoms_of(L, brng)
    count = 2 ** len(atoms)
    cons = all_congruences(L, caps)
    if count != len(cons):
        raise ConsistencyError(f"2^{len(atoms)} != {len(cons)} congruences")
    filters = ms_filters(L, caps)
    maximal = [F for F in filters if F != L.full and
               not any(G != F and G != L.full and F & ~G == 0 for G in filters)]
    a, s11 = L.forall, L.s(1, 1)
    for x in range(L.size):
        u = a[s11[x]]
        if (L.up[u] in maximal) != (u in atoms):
            raise ConsistencyError(f"atom criterion for maximal ms-filters fails at {L.names[x]}")
    return count, atoms


# --------------------------------------------------------------------------
# consequences of the discriminator at desk scale


def _permute(p: Partition, q: Partition) -> bool:
    return p.compose(q) == q.compose(p)


def discriminator_consequences(L: LmAlgebra, caps: Caps = DEFAULT_CAPS) -> Report:
    _require_monadic(L)
    caps.require("carrier", L.size)
    N = L.size
    report = Report()
    cons = all_congruences(L, caps).elements
    for p, q in product(cons, repeat=2):
        if not _permute(p, q):
            report.add("permutability", (cons.index(p), cons.index(q)))
    cset = set(cons)
    for p, q in product(cons, repeat=2):
        if p.join(q) not in cset or p.meet(q) not in cset:
            report.add("lattice-closure", (cons.index(p), cons.index(q)))
    for p, q, r in product(cons, repeat=3):
        if p.meet(q.join(r)) != p.meet(q).join(p.meet(r)):
            report.add("distributivity", (cons.index(p), cons.index(q), cons.index(r)))
    alg = L.algebra
    closures = {}
    for x, y in product(range(N), repeat=2):
        closures[(x, y)] = congruence_closure(alg, [(x, y)])
    for (x, y), th in closures.items():
        px = [discriminator(L, x, y, c) for c in range(N)]
        for c, e in product(range(N), repeat=2):
            if th.same(c, e) != (px[c] == px[e]):
                report.add("EDPC", (x, y, c, e))
    ident, total = Partition.identity(N), Partition.total(N)
    principal = set(closures.values())
    for th in principal:
        comps = [q for q in cons if th.meet(q) == ident and
                 th.compose(q) == set(total.pairs())]
        if not comps:
            report.add("factor-congruence", (th.block_of,))
    for p, q in product(principal, repeat=2):
        if p.join(q) not in principal or p.meet(q) not in principal:
            report.add("principal-sublattice", (p.block_of, q.block_of))
    report.extend(congruence_extension(L, caps))
    return report


def _restrict(part: Partition, emb) -> Partition:
    return Partition.from_key(len(emb), lambda k: part.block_of[emb[k]])


def congruence_extension(L: LmAlgebra, caps: Caps = DEFAULT_CAPS) -> Report:
    """Every congruence of a sampled subalgebra extends to one of L.

    Samples the quantifier range, the Boolean center and every singly
    generated subalgebra.
    """
    report = Report()
    masks = {mask_of(L.exists), boolean_center(L)}
    masks |= {subalgebra_closure(L, 1 << x) for x in range(L.size)}
    cons = oracle_congruences(L, caps)
    for S in sorted(masks):
        sub, emb = subalgebra(L, S, n=None, m=None, use_exists=True)
        restricted = {_restrict(p, emb) for p in cons}
        for phi in oracle_congruences(sub, caps):
            if phi not in restricted:
                report.add("CEP", (S,))
    return report


# --------------------------------------------------------------------------
# further invariants


def check_delta_compatibility(L: LmAlgebra, caps: Caps = DEFAULT_CAPS) -> Report:
    """(x, y) in theta implies (x+z, y+z) in theta, for every congruence."""
    report = Report()
    d = delta_table(L)
    for k, th in enumerate(all_congruences(L, caps).elements):
        for x, y in th.pairs():
            for z in range(L.size):
                if not th.same(d[x][z], d[y][z]):
                    report.add("plus-compatible", (k, x, y, z))
    return report


def check_semisimple(L: LmAlgebra, caps: Caps = DEFAULT_CAPS) -> bool:
    """The meet of all maximal congruences is the identity."""
    cons = all_congruences(L, caps).elements
    total = Partition.total(L.size)
    proper = [p for p in cons if p != total]
    maximal = [p for p in proper if not any(q != p and p.refines(q) for q in proper)]
    acc = total
    for p in maximal:
        acc = acc.meet(p)
    return acc == Partition.identity(L.size)


__all__ = [
    "CongruenceLattice", "all_congruences", "certify_discriminator", "check_delta_compatibility",
    "check_semisimple", "congruence_from_filter", "count_congruences", "discriminator",
    "discriminator_consequences", "gamma_diagram", "is_ms_filter", "is_simple",
    "is_subdirectly_irreducible", "monadic_ds_generated", "ms_filters",
    "oracle_congruences", "principal_congruence", "principal_lattice",
]
