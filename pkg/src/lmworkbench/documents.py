"""JSON documents for algebras and spaces.

Canonical emission is ``json.dumps(..., sort_keys=True, indent=2)`` plus a
trailing newline, so ``emit(parse(text)) == text`` for any canonical file.
Tables are integer index arrays; sigma and f tables are keyed ``"i,j"``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .core import Partition, StructuralError
from .lm import LmAlgebra, sigma_indices

FORMAT_VERSION = 1


class DocumentError(StructuralError):
    def __init__(self, message: str, line: int = None, column: int = None):
        self.line = line
        self.column = column
        where = f"line {line} column {column}: " if line is not None else ""
        super().__init__(where + message)


def _ij(i: int, j: int) -> str:
    return f"{i},{j}"


@dataclass
class AlgebraDocument:
    n: int
    m: int
    elements: list
    neg: list
    sigma: dict
    meet: list = None
    join: list = None
    order: list = None
    exists: list = None
    metadata: dict = field(default_factory=dict)
    format_version: int = FORMAT_VERSION

    def to_dict(self) -> dict:
        d = {"format_version": self.format_version, "kind": "algebra", "n": self.n,
             "m": self.m, "elements": self.elements, "neg": self.neg,
             "sigma": self.sigma, "metadata": self.metadata}
        for key in ("meet", "join", "order", "exists"):
            if getattr(self, key) is not None:
                d[key] = getattr(self, key)
        return d


@dataclass
class SpaceDocument:
    n: int
    m: int
    points: list
    leq: list
    g: list
    f: dict
    E: list
    metadata: dict = field(default_factory=dict)
    format_version: int = FORMAT_VERSION

    def to_dict(self) -> dict:
        return {"format_version": self.format_version, "kind": "space", "n": self.n,
                "m": self.m, "points": self.points, "leq": self.leq, "g": self.g,
                "f": self.f, "E": self.E, "metadata": self.metadata}


def emit(doc) -> str:
    return json.dumps(doc.to_dict(), sort_keys=True, indent=2) + "\n"


# --------------------------------------------------------------------------
# parsing


def _need(d: dict, key: str, kind, where: str = ""):
    if key not in d:
        raise DocumentError(f"missing field {where}{key!r}")
    v = d[key]
    if kind is int and (not isinstance(v, int) or isinstance(v, bool)):
        raise DocumentError(f"field {where}{key!r} must be an integer")
    if kind is not int and not isinstance(v, kind):
        raise DocumentError(f"field {where}{key!r} must be a {kind.__name__}")
    return v


def _int_list(v, name: str, depth: int = 1):
    ok = isinstance(v, list) and all(
        (isinstance(x, int) and not isinstance(x, bool)) if depth == 1 else True for x in v)
    if not ok:
        raise DocumentError(f"{name} must be a list of integers")
    if depth == 2:
        for k, row in enumerate(v):
            _int_list(row, f"{name}[{k}]")
    return v


def _keyed(v, n: int, m: int, name: str) -> dict:
    if not isinstance(v, dict):
        raise DocumentError(f"{name} must be an object keyed \"i,j\"")
    want = {_ij(i, j) for i, j in sigma_indices(n, m)}
    if set(v) != want:
        missing = sorted(want - set(v))
        extra = sorted(set(v) - want)
        raise DocumentError(f"{name} keys must be exactly {sorted(want)}"
                            f" (missing {missing}, unexpected {extra})")
    for k, t in v.items():
        _int_list(t, f"{name}[{k}]")
    return v


def _metadata(d: dict) -> dict:
    meta = d.get("metadata", {})
    if not isinstance(meta, dict) or not all(isinstance(v, str) for v in meta.values()):
        raise DocumentError("metadata must map strings to strings")
    return meta


def parse(text: str):
    """Parse a document; syntax errors carry line and column."""
    try:
        d = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(e.msg, e.lineno, e.colno) from None
    if not isinstance(d, dict):
        raise DocumentError("document must be a JSON object", 1, 1)
    version = _need(d, "format_version", int)
    if version != FORMAT_VERSION:
        raise DocumentError(f"unsupported format_version {version}")
    kind = _need(d, "kind", str)
    n, m = _need(d, "n", int), _need(d, "m", int)
    if n < 2 or m < 2:
        raise DocumentError("n and m must be at least 2")
    if kind == "algebra":
        elements = _need(d, "elements", list)
        if not all(isinstance(x, str) for x in elements):
            raise DocumentError("elements must be strings")
        has_tables = "meet" in d or "join" in d
        if has_tables and not ("meet" in d and "join" in d):
            raise DocumentError("meet and join must be given together")
        if not has_tables and "order" not in d:
            raise DocumentError("need either meet/join tables or an order matrix")
        doc = AlgebraDocument(
            n=n, m=m, elements=elements,
            neg=_int_list(_need(d, "neg", list), "neg"),
            sigma=_keyed(_need(d, "sigma", dict), n, m, "sigma"),
            meet=_int_list(d["meet"], "meet", 2) if has_tables else None,
            join=_int_list(d["join"], "join", 2) if has_tables else None,
            order=_int_list(d["order"], "order", 2) if "order" in d else None,
            exists=_int_list(d["exists"], "exists") if "exists" in d else None,
            metadata=_metadata(d), format_version=version)
        return doc
    if kind == "space":
        points = _need(d, "points", list)
        if not all(isinstance(x, str) for x in points):
            raise DocumentError("points must be strings")
        blocks = _need(d, "E", list)
        for k, b in enumerate(blocks):
            _int_list(b, f"E[{k}]")
        return SpaceDocument(
            n=n, m=m, points=points,
            leq=_int_list(_need(d, "leq", list), "leq", 2),
            g=_int_list(_need(d, "g", list), "g"),
            f=_keyed(_need(d, "f", dict), n, m, "f"),
            E=blocks, metadata=_metadata(d), format_version=version)
    raise DocumentError(f"unknown document kind {kind!r}")


def load(path) -> object:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise DocumentError(f"cannot read {path}: {e}") from None
    return parse(text)


# --------------------------------------------------------------------------
# conversion


def _square(t, k: int, name: str) -> tuple:
    if len(t) != k or any(len(r) != k for r in t):
        raise DocumentError(f"{name} must be {k}x{k}")
    for r in t:
        for v in r:
            if not 0 <= v < k:
                raise DocumentError(f"{name} entry {v} out of range")
    return tuple(tuple(r) for r in t)


def _lattice_from_order(order) -> tuple:
    k = len(order)
    leq = [[bool(v) for v in r] for r in order]

    geq = [[leq[b][a] for b in range(k)] for a in range(k)]

    def greatest_lower(rel, a, b, what):
        lower = [z for z in range(k) if rel[z][a] and rel[z][b]]
        best = [z for z in lower if all(rel[w][z] for w in lower)]
        if len(best) != 1:
            raise DocumentError(f"order has no {what} for elements {a} and {b}")
        return best[0]

    meet = tuple(tuple(greatest_lower(leq, a, b, "meet") for b in range(k)) for a in range(k))
    join = tuple(tuple(greatest_lower(geq, a, b, "join") for b in range(k)) for a in range(k))
    return meet, join


def to_algebra(doc: AlgebraDocument) -> LmAlgebra:
    k = len(doc.elements)
    if k == 0 or len(set(doc.elements)) != k:
        raise DocumentError("elements must be non-empty and pairwise distinct")
    if doc.meet is not None:
        meet, join = _square(doc.meet, k, "meet"), _square(doc.join, k, "join")
    else:
        order = _square(doc.order, k, "order") if all(
            v in (0, 1) for r in doc.order for v in r) else None
        if order is None:
            raise DocumentError("order entries must be 0 or 1")
        meet, join = _lattice_from_order(order)
    sigma = tuple(tuple(doc.sigma[_ij(i, j)]) for i, j in sigma_indices(doc.n, doc.m))
    exists = tuple(doc.exists) if doc.exists is not None else None
    return LmAlgebra(tuple(doc.elements), meet, join, tuple(doc.neg), doc.n, doc.m, sigma, exists)


def from_algebra(L: LmAlgebra, metadata: dict = None) -> AlgebraDocument:
    return AlgebraDocument(
        n=L.n, m=L.m, elements=list(L.names), neg=list(L.neg),
        sigma={_ij(i, j): list(t) for (i, j), t in zip(L.indices, L.sigma)},
        meet=[list(r) for r in L.meet], join=[list(r) for r in L.join],
        exists=list(L.exists) if L.exists is not None else None,
        metadata=dict(metadata or {}))


def to_space(doc: SpaceDocument):
    from .duality import MlmSpace

    k = len(doc.points)
    if k == 0 or len(set(doc.points)) != k:
        raise DocumentError("points must be non-empty and pairwise distinct")
    leq = _square(doc.leq, k, "leq")
    if any(v not in (0, 1) for r in leq for v in r):
        raise DocumentError("leq entries must be 0 or 1")
    seen = sorted(x for b in doc.E for x in b)
    if seen != list(range(k)):
        raise DocumentError("E blocks must partition the points")
    f = tuple(tuple(doc.f[_ij(i, j)]) for i, j in sigma_indices(doc.n, doc.m))
    return MlmSpace(tuple(doc.points), tuple(tuple(bool(v) for v in r) for r in leq),
                    tuple(doc.g), f, Partition.from_blocks(k, doc.E), doc.n, doc.m)


def from_space(X, metadata: dict = None) -> SpaceDocument:
    return SpaceDocument(
        n=X.n, m=X.m, points=list(X.names),
        leq=[[int(v) for v in r] for r in X.leq], g=list(X.g),
        f={_ij(i, j): list(t) for (i, j), t in zip(X.indices, X.f)},
        E=[list(b) for b in X.E.blocks()], metadata=dict(metadata or {}))
