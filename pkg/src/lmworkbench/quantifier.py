"""Existential quantifiers on finite LM algebras and their ranges.

A quantifier is stored as a unary table.  Its range is a Moore family that is
also a subalgebra; conversely every subset meeting the four range conditions
determines exactly one quantifier, ``x -> least member above x``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .core import (
    DEFAULT_CAPS, Caps, ConsistencyError, Rejected, Report, mask_of, members,
)
from .lm import LmAlgebra, boolean_center, subalgebra_closure


def forall_of(L: LmAlgebra, q) -> tuple:
    neg = L.neg
    return tuple(neg[q[neg[x]]] for x in range(L.size))


def exists_of(L: LmAlgebra, a) -> tuple:
    return forall_of(L, a)  # same dualisation in both directions


def check_quantifier(L: LmAlgebra, q) -> Report:
    """Axioms e1-e4 with witnesses."""
    report = Report()
    N = L.size
    if len(q) != N or any(not 0 <= v < N for v in q):
        report.add("totality")
        return report
    meet = L.meet
    if q[L.zero] != L.zero:
        report.add("e1", (L.zero,))
    for x in range(N):
        if meet[x][q[x]] != x:
            report.add("e2", (x,))
    for x, y in product(range(N), repeat=2):
        if q[meet[x][q[y]]] != meet[q[x]][q[y]]:
            report.add("e3", (x, y))
    for (i, j), s in zip(L.indices, L.sigma):
        for x in range(N):
            if q[s[x]] != s[q[x]]:
                report.add("e4", (i, j, x), f"exists(sigma x)={L.names[q[s[x]]]} "
                                            f"but sigma(exists x)={L.names[s[q[x]]]}")
    return report


def check_universal(L: LmAlgebra, a) -> Report:
    """Axioms e5-e8 for a universal quantifier table."""
    report = Report()
    N = L.size
    meet, join = L.meet, L.join
    if a[L.one] != L.one:
        report.add("e5", (L.one,))
    for x in range(N):
        if meet[x][a[x]] != a[x]:
            report.add("e6", (x,))
    for x, y in product(range(N), repeat=2):
        if a[join[x][a[y]]] != join[a[x]][a[y]]:
            report.add("e7", (x, y))
    for (i, j), s in zip(L.indices, L.sigma):
        for x in range(N):
            if a[s[x]] != s[a[x]]:
                report.add("e8", (i, j, x))
    return report


def derived_law_suite(L: LmAlgebra, q) -> Report:
    """The sixteen consequences e9-e24; any entry is an internal error."""
    report = Report()
    N = L.size
    R = range(N)
    a = forall_of(L, q)
    meet, join, neg, leq = L.meet, L.join, L.neg, L.leq
    rng = mask_of(q)
    bc = boolean_center(L)
    if q[L.one] != L.one:
        report.add("e9")
    if a[L.zero] != L.zero:
        report.add("e15")
    for x in R:
        if q[q[x]] != q[x]:
            report.add("e10", (x,))
        if bool(rng >> x & 1) != (q[x] == x):
            report.add("e11", (x,))
        if a[a[x]] != a[x]:
            report.add("e16", (x,))
        if bc >> x & 1 and not bc >> a[x] & 1:
            report.add("e18", (x,))
        if q[a[x]] != a[x] or a[q[x]] != q[x]:
            report.add("e21", (x,))
        if (x == a[x]) != (x == q[x]):
            report.add("e22", (x,))
    for x, y in product(R, repeat=2):
        if leq[x][y] and not leq[q[x]][q[y]]:
            report.add("e12", (x, y))
        if q[join[x][y]] != join[q[x]][q[y]]:
            report.add("e13", (x, y))
        if leq[x][y] and not leq[a[x]][a[y]]:
            report.add("e17", (x, y))
        if a[meet[x][y]] != meet[a[x]][a[y]]:
            report.add("e19", (x, y))
    for (i, j), s in zip(L.indices, L.sigma):
        for x in R:
            t = neg[s[q[x]]]
            if q[t] != t:
                report.add("e14", (i, j, x))
            if a[t] != t:
                report.add("e24", (i, j, x))
            u = neg[s[a[x]]]
            if a[u] != u:
                report.add("e20", (i, j, x))
            if q[u] != u:
                report.add("e23", (i, j, x))
    return report


def check_monadic_boolean(L: LmAlgebra, q) -> Report:
    """The restriction of a quantifier to the Boolean center is a Boolean one."""
    report = Report()
    bc = members(boolean_center(L))
    bmask = mask_of(bc)
    meet = L.meet
    for x in bc:
        if not bmask >> q[x] & 1:
            report.add("B-closure", (x,))
        if meet[x][q[x]] != x:
            report.add("B-e2", (x,))
    if q[L.zero] != L.zero:
        report.add("B-e1")
    for x, y in product(bc, repeat=2):
        if q[meet[x][q[y]]] != meet[q[x]][q[y]]:
            report.add("B-e3", (x, y))
    rng = mask_of(q[x] for x in bc)
    for x in members(rng):
        if not rng >> L.neg[x] & 1:
            report.add("B-range-complement", (x,))
    return report


def relative_pseudocomplement(L: LmAlgebra, x: int, y: int):
    """Greatest z with x & z <= y, or None when no greatest one exists."""
    cands = [z for z in range(L.size) if L.leq[L.meet[x][z]][y]]
    top = [z for z in cands if all(L.leq[w][z] for w in cands)]
    return top[0] if top else None


def least_above(L: LmAlgebra, mask: int, x: int):
    ub = [z for z in members(mask) if L.leq[x][z]]
    return L.meet_all(ub) if ub else None


@dataclass
class MooreFamily:
    members: int
    report: Report

    @property
    def ok(self) -> bool:
        return self.report.ok


def check_moore_conditions(L: LmAlgebra, M: int, require_rpc: bool = True) -> Report:
    """Range conditions (i)-(iv) for a candidate subset ``M``.

    (i) contains 1 and is meet-closed, (ii) is an LM subalgebra, (iii) least
    covers commute with every sigma, (iv) relative pseudocomplements of members
    exist (when ``require_rpc``) and are members.
    """
    report = Report()
    xs = members(M)
    if not M >> L.one & 1:
        report.add("(i)", (L.one,), "1 not in family")
    for x, y in product(xs, repeat=2):
        if not M >> L.meet[x][y] & 1:
            report.add("(i)", (x, y), "not meet-closed")
            break
    if subalgebra_closure(L, M, use_exists=False) != M:
        report.add("(ii)", (), "not a subalgebra")
    if M >> L.one & 1:
        for (i, j), s in zip(L.indices, L.sigma):
            for x in range(L.size):
                lhs = s[least_above(L, M, x)]
                rhs = least_above(L, M, s[x])
                if lhs != rhs:
                    report.add("(iii)", (i, j, x))
    for x, y in product(xs, repeat=2):
        r = relative_pseudocomplement(L, x, y)
        if r is None:
            if require_rpc:
                report.add("(iv)", (x, y), "relative pseudocomplement missing")
        elif not M >> r & 1:
            report.add("(iv)", (x, y), "relative pseudocomplement outside family")
    return report


def range_profile(L: LmAlgebra, q) -> MooreFamily:
    """The range of ``q`` together with the four range conditions checked on it."""
    M = mask_of(q)
    report = check_moore_conditions(L, M, require_rpc=False)
    for x in range(L.size):
        if least_above(L, M, x) != q[x]:
            report.add("(i)", (x,), "exists x is not the least member above x")
    return MooreFamily(M, report)


def quantifier_from_moore_family(L: LmAlgebra, M: int) -> tuple:
    report = check_moore_conditions(L, M)
    if not report.ok:
        v = report.violations[0]
        raise Rejected(f"family fails condition {v.law} at {v.witness}: {v.detail}".rstrip(": "))
    q = tuple(least_above(L, M, x) for x in range(L.size))
    if not check_quantifier(L, q).ok or mask_of(q) != M:
        raise ConsistencyError("least-cover map of a qualifying family is not a quantifier")
    return q


def lm_subalgebras(L: LmAlgebra) -> list:
    """All LM subalgebras (0 and 1 included), as masks in ascending order."""
    base = subalgebra_closure(L, 0, use_exists=False)
    found = {base}
    frontier = [base]
    while frontier:
        nxt = []
        for s in frontier:
            for x in range(L.size):
                if not s >> x & 1:
                    t = subalgebra_closure(L, s | 1 << x, use_exists=False)
                    if t not in found:
                        found.add(t)
                        nxt.append(t)
        frontier = nxt
    return sorted(found)


def quantifiers_brute_force(L: LmAlgebra) -> list:
    """Every unary table satisfying e1-e4, by pruned exhaustive search.

    Candidates for ``x`` are restricted to elements above ``x`` (forced by e2)
    and ``0`` is pinned (e1); each e3/e4 instance is checked at the level of its
    largest index, and survivors are re-checked in full.
    """
    N = L.size
    meet = L.meet
    q = [0] * N
    cands = [[z for z in range(N) if L.leq[x][z]] for x in range(N)]
    cands[L.zero] = [L.zero]
    sig = list(L.sigma)
    out = []

    def ok(k: int) -> bool:
        for x in range(k + 1):
            for y in range(k + 1):
                w = meet[x][q[y]]
                if w > k or (x != k and y != k and w != k):
                    continue
                if q[w] != meet[q[x]][q[y]]:
                    return False
        for s in sig:
            for x in range(k + 1):
                sx = s[x]
                if (x == k or sx == k) and sx <= k and q[sx] != s[q[x]]:
                    return False
        return True

    def rec(k: int):
        if k == N:
            out.append(tuple(q))
            return
        for v in cands[k]:
            q[k] = v
            if ok(k):
                rec(k + 1)

    rec(0)
    for t in out:
        if not check_quantifier(L, t).ok:
            raise ConsistencyError(f"pruned search produced a non-quantifier {t}")
    return sorted(out)


def quantifiers_from_families(L: LmAlgebra, record=None) -> list:
    """Quantifiers obtained from every subalgebra passing the range conditions.

    ``record``, when given, receives ``(mask, report)`` for each subalgebra that
    fails only condition (iii).
    """
    out = []
    for M in lm_subalgebras(L):
        rep = check_moore_conditions(L, M)
        if rep.ok:
            out.append(quantifier_from_moore_family(L, M))
        elif record is not None and set(rep.laws()) == {"(iii)"}:
            record.append((M, rep))
    return sorted(out)


def enumerate_quantifiers(L: LmAlgebra, caps: Caps = DEFAULT_CAPS) -> list:
    caps.require("carrier", L.size)
    a = quantifiers_brute_force(L)
    b = quantifiers_from_families(L)
    if a != b:
        raise ConsistencyError(
            f"brute force found {len(a)} quantifiers, range families gave {len(b)}")
    return a


def diagonal_join(A: LmAlgebra) -> tuple:
    """``(a, b) -> (a v b, a v b)`` on the square of ``A`` (product indexing)."""
    k = A.size
    out = []
    for a in range(k):
        for b in range(k):
            j = A.join[a][b]
            out.append(j * k + j)
    return tuple(out)
