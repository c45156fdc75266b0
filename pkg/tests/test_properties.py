"""Randomised law checks over small generated structures."""

from itertools import product

from hypothesis import given, settings, strategies as st

from lmworkbench import documents as docs
from lmworkbench.congruence import all_congruences, count_congruences
from lmworkbench.core import Partition, check_poset, enumerate_upsets, is_upset
from lmworkbench.fixtures import fixture
from lmworkbench.lm import boolean_algebra
from lmworkbench.quantifier import check_quantifier, enumerate_quantifiers

partitions = st.integers(1, 7).flatmap(
    lambda n: st.lists(st.integers(0, n - 1), min_size=n, max_size=n)
).map(Partition.from_blocks_array)


@st.composite
def partition_pairs(draw):
    n = draw(st.integers(1, 7))
    arr = st.lists(st.integers(0, n - 1), min_size=n, max_size=n)
    return Partition.from_blocks_array(draw(arr)), Partition.from_blocks_array(draw(arr))


@st.composite
def posets(draw):
    n = draw(st.integers(1, 7))
    rel = [[x == y for y in range(n)] for x in range(n)]
    for x in range(n):
        for y in range(x + 1, n):
            rel[x][y] = draw(st.booleans())
    for k, x, y in product(range(n), repeat=3):
        if rel[x][k] and rel[k][y]:
            rel[x][y] = True
    return rel


@given(partitions)
def test_partition_canonical(p):
    assert Partition.from_blocks_array(p.block_of) == p
    assert Partition.from_blocks(p.size, p.blocks()) == p
    assert p.refines(p) and Partition.identity(p.size).refines(p)
    assert p.refines(Partition.total(p.size))


@given(partition_pairs())
def test_partition_lattice_laws(pair):
    p, q = pair
    lo, hi = p.meet(q), p.join(q)
    assert lo.refines(p) and lo.refines(q)
    assert p.refines(hi) and q.refines(hi)
    assert p.meet(hi) == p and p.join(lo) == p
    assert (p.refines(q)) == (p.meet(q) == p)


@given(posets())
def test_upsets_match_brute_force(leq):
    n = len(leq)
    assert check_poset(leq).ok
    brute = [U for U in range(1 << n) if is_upset(leq, U)]
    assert enumerate_upsets(leq) == brute


def atom_quantifier(k, blocks):
    """exists(a) = union of the atom blocks that meet a."""
    out = []
    for a in range(1 << k):
        v = 0
        for b in range(k):
            if a >> b & 1:
                v |= sum(1 << t for t in range(k) if blocks.same(t, b))
        out.append(v)
    return tuple(out)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3).flatmap(
    lambda k: st.lists(st.integers(0, k - 1), min_size=k, max_size=k)
).map(Partition.from_blocks_array))
def test_boolean_quantifiers_from_atom_partitions(blocks):
    k = blocks.size
    B = boolean_algebra(k)
    q = atom_quantifier(k, blocks)
    assert check_quantifier(B, q).ok
    assert q in enumerate_quantifiers(B)
    M = boolean_algebra(k, exists=q)
    n, atoms = count_congruences(M)
    assert n == 2 ** blocks.n_blocks == len(all_congruences(M))
    assert len(atoms) == blocks.n_blocks


@given(st.dictionaries(st.text(max_size=8), st.text(max_size=8), max_size=4),
       st.sampled_from(["TRIV2", "CHAIN3", "PROD"]))
def test_metadata_round_trip(meta, name):
    L = fixture(name)
    text = docs.emit(docs.from_algebra(L, meta))
    doc = docs.parse(text)
    assert doc.metadata == meta
    assert docs.to_algebra(doc) == L
