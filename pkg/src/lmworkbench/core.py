"""Finite carriers, operation tables, subsets, partitions and morphisms.

Elements are always plain integer indices ``0..size-1``; names are for display
only.  Subsets of a carrier are ``int`` bit masks (bit ``x`` set means element
``x`` is a member).  Everything here is immutable and deterministic: maps are
enumerated lexicographically, partitions number their blocks by least element,
and mask lists come out in ascending integer order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Mapping, Sequence

DEFAULT_CARRIER_CAP = 20
DEFAULT_ENDO_CAP = 12
DEFAULT_UPSET_CAP = 20


class WorkbenchError(Exception):
    pass


class StructuralError(WorkbenchError):
    """Tables with the wrong shape; no law checking is attempted."""


class CapExceeded(WorkbenchError):
    def __init__(self, cap_name: str, cap: int, size: int):
        self.cap_name = cap_name
        self.cap = cap
        self.size = size
        super().__init__(f"{cap_name} exceeded: size {size} > cap {cap}")


class Rejected(WorkbenchError):
    """Input fails a precondition of the requested construction."""


class ConsistencyError(WorkbenchError):
    """Two independent computations that must agree did not."""


@dataclass(frozen=True)
class Caps:
    carrier: int = DEFAULT_CARRIER_CAP
    endo: int = DEFAULT_ENDO_CAP
    upsets: int = DEFAULT_UPSET_CAP

    def require(self, which: str, size: int) -> None:
        cap = getattr(self, which)
        if size > cap:
            raise CapExceeded(f"cap-{which}", cap, size)


DEFAULT_CAPS = Caps()


# --------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class Violation:
    law: str
    witness: tuple = ()
    detail: str = ""

    def __str__(self):
        w = ",".join(str(x) for x in self.witness)
        s = f"{self.law}({w})"
        return f"{s}: {self.detail}" if self.detail else s


@dataclass
class Report:
    """Ordered list of law violations; empty means every checked law holds."""

    violations: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, law, witness=(), detail=""):
        self.violations.append(Violation(law, tuple(witness), detail))

    def laws(self) -> list:
        seen = []
        for v in self.violations:
            if v.law not in seen:
                seen.append(v.law)
        return seen

    def extend(self, other: "Report") -> None:
        self.violations.extend(other.violations)
        self.notes.extend(other.notes)

    def __bool__(self):
        return self.ok


# --------------------------------------------------------------------------
# bit masks


def mask_of(xs: Iterable[int]) -> int:
    m = 0
    for x in xs:
        m |= 1 << x
    return m


def members(mask: int) -> list:
    out = []
    x = 0
    while mask:
        if mask & 1:
            out.append(x)
        mask >>= 1
        x += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def full_mask(size: int) -> int:
    return (1 << size) - 1


def contains(mask: int, x: int) -> bool:
    return bool(mask >> x & 1)


# --------------------------------------------------------------------------
# posets


def check_poset(leq: Sequence[Sequence[bool]]) -> Report:
    report = Report()
    n = len(leq)
    if any(len(row) != n for row in leq):
        raise StructuralError("order matrix is not square")
    for a in range(n):
        if not leq[a][a]:
            report.add("reflexivity", (a,))
    for a, b in product(range(n), repeat=2):
        if a != b and leq[a][b] and leq[b][a]:
            report.add("antisymmetry", (a, b))
    for a, b, c in product(range(n), repeat=3):
        if leq[a][b] and leq[b][c] and not leq[a][c]:
            report.add("transitivity", (a, b, c))
    return report


def up_masks(leq) -> list:
    """``up[x]`` is the mask of all ``y`` with ``x <= y``."""
    n = len(leq)
    return [mask_of(y for y in range(n) if leq[x][y]) for x in range(n)]


def down_masks(leq) -> list:
    n = len(leq)
    return [mask_of(y for y in range(n) if leq[y][x]) for x in range(n)]


def is_upset(leq, mask: int) -> bool:
    up = up_masks(leq)
    return all(up[x] & ~mask == 0 for x in members(mask))


def enumerate_upsets(leq, caps: Caps = DEFAULT_CAPS) -> list:
    """All upward-closed subsets of a finite poset, ascending by mask.

    Elements are decided from the top of a linear extension downwards; an
    element may join the set only once everything strictly above it has, so
    the search never dead-ends and each up-set is produced exactly once.
    """
    n = len(leq)
    caps.require("upsets", n)
    up = up_masks(leq)
    # linear extension, largest elements first
    order = sorted(range(n), key=lambda x: popcount(up[x]))
    strict_up = [up[x] & ~(1 << x) for x in range(n)]
    out = []

    def rec(k: int, mask: int):
        if k == n:
            out.append(mask)
            return
        x = order[k]
        rec(k + 1, mask)
        if strict_up[x] & ~mask == 0:
            rec(k + 1, mask | 1 << x)

    rec(0, 0)
    out.sort()
    return out


# --------------------------------------------------------------------------
# lattices


def leq_from_meet(meet) -> list:
    n = len(meet)
    return [[meet[a][b] == a for b in range(n)] for a in range(n)]


def validate_lattice(meet, join, leq) -> Report:
    """Check the bounded distributive lattice laws on explicit tables."""
    n = len(meet)
    if not (len(join) == n and len(leq) == n):
        raise StructuralError("meet, join and order tables have different sizes")
    for tbl, nm in ((meet, "meet"), (join, "join"), (leq, "order")):
        if any(len(row) != n for row in tbl):
            raise StructuralError(f"{nm} table is not {n}x{n}")
    for tbl, nm in ((meet, "meet"), (join, "join")):
        for a, b in product(range(n), repeat=2):
            if not 0 <= tbl[a][b] < n:
                raise StructuralError(f"{nm}[{a}][{b}]={tbl[a][b]} out of range")

    report = Report()
    R = range(n)
    for a, b in product(R, repeat=2):
        if meet[a][b] != meet[b][a]:
            report.add("commutativity", (a, b), "meet")
        if join[a][b] != join[b][a]:
            report.add("commutativity", (a, b), "join")
    for a, b, c in product(R, repeat=3):
        if meet[meet[a][b]][c] != meet[a][meet[b][c]]:
            report.add("associativity", (a, b, c), "meet")
        if join[join[a][b]][c] != join[a][join[b][c]]:
            report.add("associativity", (a, b, c), "join")
    for a, b in product(R, repeat=2):
        if meet[a][join[a][b]] != a or join[a][meet[a][b]] != a:
            report.add("absorption", (a, b))
    for a, b, c in product(R, repeat=3):
        if meet[a][join[b][c]] != join[meet[a][b]][meet[a][c]]:
            report.add("distributivity", (a, b, c))
    for a, b in product(R, repeat=2):
        if bool(leq[a][b]) != (meet[a][b] == a):
            report.add("leq-consistency", (a, b), "meet")
        if bool(leq[a][b]) != (join[a][b] == b):
            report.add("leq-consistency", (a, b), "join")
    bottoms = [z for z in R if all(meet[z][x] == z for x in R)]
    tops = [u for u in R if all(join[u][x] == u for x in R)]
    if not bottoms:
        report.add("bound-0")
    if not tops:
        report.add("bound-1")
    return report


def bottom_of(meet) -> int:
    n = len(meet)
    for z in range(n):
        if all(meet[z][x] == z for x in range(n)):
            return z
    raise StructuralError("no least element")


def top_of(join) -> int:
    n = len(join)
    for u in range(n):
        if all(join[u][x] == u for x in range(n)):
            return u
    raise StructuralError("no greatest element")


# --------------------------------------------------------------------------
# algebras


@dataclass(frozen=True, eq=False)
class FiniteAlgebra:
    """A carrier with named total operation tables.

    ``unary`` maps an operation name to a size-length tuple, ``binary`` to a
    size x size tuple of tuples, ``constants`` to an element index.
    """

    names: tuple
    unary: Mapping = field(default_factory=dict)
    binary: Mapping = field(default_factory=dict)
    constants: Mapping = field(default_factory=dict)

    def __post_init__(self):
        n = len(self.names)
        if n < 1:
            raise StructuralError("empty carrier")
        if len(set(self.names)) != n:
            raise StructuralError("element names are not distinct")
        for k, t in self.unary.items():
            if len(t) != n or any(not 0 <= v < n for v in t):
                raise StructuralError(f"unary table {k!r} is not total on {n} elements")
        for k, t in self.binary.items():
            if len(t) != n or any(len(r) != n or any(not 0 <= v < n for v in r) for r in t):
                raise StructuralError(f"binary table {k!r} is not total on {n} elements")
        for k, v in self.constants.items():
            if not 0 <= v < n:
                raise StructuralError(f"constant {k!r} out of range")

    @property
    def size(self) -> int:
        return len(self.names)

    def signature(self) -> tuple:
        return tuple(self.unary) + tuple(self.binary) + tuple(self.constants)


@dataclass(frozen=True)
class Partition:
    """Equivalence relation as a block assignment, blocks numbered by least element."""

    block_of: tuple

    @classmethod
    def from_blocks_array(cls, arr) -> "Partition":
        relabel = {}
        out = []
        for b in arr:
            if b not in relabel:
                relabel[b] = len(relabel)
            out.append(relabel[b])
        return cls(tuple(out))

    @classmethod
    def identity(cls, n: int) -> "Partition":
        return cls(tuple(range(n)))

    @classmethod
    def total(cls, n: int) -> "Partition":
        return cls((0,) * n)

    @classmethod
    def from_key(cls, n: int, key) -> "Partition":
        """Kernel of an arbitrary function ``key`` on ``range(n)``."""
        return cls.from_blocks_array([key(x) for x in range(n)])

    @classmethod
    def from_blocks(cls, n: int, blocks) -> "Partition":
        arr = [None] * n
        for b, blk in enumerate(blocks):
            for x in blk:
                if arr[x] is not None:
                    raise StructuralError(f"element {x} in two blocks")
                arr[x] = b
        if None in arr:
            raise StructuralError("blocks do not cover the carrier")
        return cls.from_blocks_array(arr)

    @property
    def size(self) -> int:
        return len(self.block_of)

    @property
    def n_blocks(self) -> int:
        return max(self.block_of) + 1 if self.block_of else 0

    def same(self, x: int, y: int) -> bool:
        return self.block_of[x] == self.block_of[y]

    def blocks(self) -> list:
        out = [[] for _ in range(self.n_blocks)]
        for x, b in enumerate(self.block_of):
            out[b].append(x)
        return out

    def class_mask(self, x: int) -> int:
        b = self.block_of[x]
        return mask_of(y for y, c in enumerate(self.block_of) if c == b)

    def pairs(self) -> list:
        n = self.size
        return [(x, y) for x in range(n) for y in range(n) if self.same(x, y)]

    def refines(self, other: "Partition") -> bool:
        """``self <= other`` in the refinement order."""
        first = {}
        for x, b in enumerate(self.block_of):
            if not other.same(x, first.setdefault(b, x)):
                return False
        return True

    def meet(self, other: "Partition") -> "Partition":
        return Partition.from_key(self.size, lambda x: (self.block_of[x], other.block_of[x]))

    def join(self, other: "Partition") -> "Partition":
        uf = UnionFind(self.size)
        for p in (self, other):
            for blk in p.blocks():
                for y in blk[1:]:
                    uf.union(blk[0], y)
        return uf.partition()

    def compose(self, other: "Partition") -> set:
        """Relational product ``self ; other`` as a set of pairs."""
        n = self.size
        return {(x, z) for x in range(n) for y in range(n) if self.same(x, y)
                for z in range(n) if other.same(y, z)}

    @property
    def is_identity(self) -> bool:
        return self.n_blocks == self.size

    @property
    def is_total(self) -> bool:
        return self.n_blocks <= 1


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if rx < ry:
            self.parent[ry] = rx
        else:
            self.parent[rx] = ry
        return True

    def partition(self) -> Partition:
        return Partition.from_blocks_array([self.find(x) for x in range(len(self.parent))])


def congruence_closure(alg: FiniteAlgebra, pairs) -> Partition:
    """Smallest partition containing ``pairs`` compatible with every operation.

    Worklist closure: each newly merged generating pair pushes its images under
    every unary operation and every binary operation in each slot.  Checking
    compatibility on generating pairs suffices, since compatible relations are
    closed under the equivalence hull.
    """
    n = alg.size
    uf = UnionFind(n)
    unary = list(alg.unary.values())
    binary = list(alg.binary.values())
    work = [(a, b) for a, b in pairs]
    for a, b in work:
        if not (0 <= a < n and 0 <= b < n):
            raise Rejected(f"pair ({a},{b}) outside carrier")
    while work:
        x, y = work.pop()
        if not uf.union(x, y):
            continue
        for u in unary:
            work.append((u[x], u[y]))
        for t in binary:
            tx, ty = t[x], t[y]
            for z in range(n):
                work.append((tx[z], ty[z]))
                work.append((t[z][x], t[z][y]))
    return uf.partition()


def is_compatible(alg: FiniteAlgebra, part: Partition) -> bool:
    n = alg.size
    for u in alg.unary.values():
        if any(not part.same(u[x], u[y]) for x, y in part.pairs()):
            return False
    for t in alg.binary.values():
        for x, y in part.pairs():
            if x == y:
                continue
            for z in range(n):
                if not part.same(t[x][z], t[y][z]) or not part.same(t[z][x], t[z][y]):
                    return False
    return True


# --------------------------------------------------------------------------
# morphisms


@dataclass(frozen=True, eq=False)
class Morphism:
    source: FiniteAlgebra
    target: FiniteAlgebra
    map: tuple

    def __post_init__(self):
        if len(self.map) != self.source.size:
            raise StructuralError("morphism map is not total")
        if any(not 0 <= v < self.target.size for v in self.map):
            raise StructuralError("morphism map leaves the target carrier")

    def __call__(self, x: int) -> int:
        return self.map[x]

    def preserves_signature(self, signature=None) -> Report:
        return preservation_report(self.source, self.target, self.map, signature)

    @property
    def injective(self) -> bool:
        return len(set(self.map)) == len(self.map)

    @property
    def surjective(self) -> bool:
        return len(set(self.map)) == self.target.size


def preservation_report(src: FiniteAlgebra, tgt: FiniteAlgebra, f, signature=None) -> Report:
    sig = src.signature() if signature is None else tuple(signature)
    report = Report()
    n = src.size
    for op in sig:
        if op in src.unary:
            s, t = src.unary[op], tgt.unary[op]
            for x in range(n):
                if f[s[x]] != t[f[x]]:
                    report.add(op, (x,))
        elif op in src.binary:
            s, t = src.binary[op], tgt.binary[op]
            for x, y in product(range(n), repeat=2):
                if f[s[x][y]] != t[f[x]][f[y]]:
                    report.add(op, (x, y))
        elif op in src.constants:
            if f[src.constants[op]] != tgt.constants[op]:
                report.add(op)
        else:
            raise StructuralError(f"unknown operation {op!r}")
    return report


def _constraints(src: FiniteAlgebra, tgt: FiniteAlgebra, signature):
    """Bucket every preservation equation by the largest source index it mentions."""
    n = src.size
    buckets = [[] for _ in range(n)]
    for op in signature:
        if op in src.unary:
            s, t = src.unary[op], tgt.unary[op]
            for x in range(n):
                buckets[max(x, s[x])].append((1, t, (x,), s[x]))
        elif op in src.binary:
            s, t = src.binary[op], tgt.binary[op]
            for x, y in product(range(n), repeat=2):
                buckets[max(x, y, s[x][y])].append((2, t, (x, y), s[x][y]))
        elif op in src.constants:
            buckets[src.constants[op]].append((0, tgt.constants[op], (), src.constants[op]))
        else:
            raise StructuralError(f"unknown operation {op!r}")
    return buckets


def enumerate_homomorphisms(src: FiniteAlgebra, tgt: FiniteAlgebra, signature=None,
                            candidates=None, injective=False, first_only=False):
    """All maps ``src -> tgt`` preserving ``signature``, lexicographic by image tuple.

    Backtracking assigns images in index order and rejects a partial map as soon
    as an equation whose indices are all assigned fails.  ``candidates[x]``
    optionally restricts the images tried for ``x``.
    """
    sig = src.signature() if signature is None else tuple(signature)
    n, k = src.size, tgt.size
    buckets = _constraints(src, tgt, sig)
    cand = [sorted(candidates[x]) if candidates is not None else range(k) for x in range(n)]
    f = [0] * n
    used = [False] * k
    out = []

    def ok(level: int) -> bool:
        for arity, t, args, res in buckets[level]:
            if arity == 1:
                if f[res] != t[f[args[0]]]:
                    return False
            elif arity == 2:
                if f[res] != t[f[args[0]]][f[args[1]]]:
                    return False
            elif f[res] != t:
                return False
        return True

    def rec(level: int) -> bool:
        if level == n:
            out.append(tuple(f))
            return first_only
        for v in cand[level]:
            if injective and used[v]:
                continue
            f[level] = v
            if ok(level):
                used[v] = True
                if rec(level + 1):
                    return True
                used[v] = False
        return False

    rec(0)
    return out


def enumerate_endomorphisms(alg: FiniteAlgebra, signature=None, caps: Caps = DEFAULT_CAPS,
                            candidates=None) -> list:
    caps.require("endo", alg.size)
    maps = enumerate_homomorphisms(alg, alg, signature, candidates)
    return [Morphism(alg, alg, m) for m in maps]


def find_isomorphism(a: FiniteAlgebra, b: FiniteAlgebra, signature=None, candidates=None):
    """An isomorphism ``a -> b`` preserving ``signature`` as an image tuple, or None."""
    if a.size != b.size:
        return None
    found = enumerate_homomorphisms(a, b, signature, candidates, injective=True,
                                    first_only=True)
    return found[0] if found else None
