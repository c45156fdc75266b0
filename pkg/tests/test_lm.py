from dataclasses import replace
from itertools import product

import pytest

from _support import FIXTURES, grid_powers
from lmworkbench.core import Caps, CapExceeded, Rejected, StructuralError, mask_of
from lmworkbench.fixtures import fixture
from lmworkbench.lm import (
    boolean_center, check_delta_laws, check_lm_axioms, deductive_system_generated,
    deductive_systems, delta, filter_generated, implication, is_centred, is_stone_filter,
    stone_filters, subalgebra,
)


def names(L, mask):
    return L.name_set(mask)


@pytest.mark.parametrize("name", FIXTURES)
def test_fixtures_pass_axioms(name):
    L = fixture(name)
    assert check_lm_axioms(L).ok
    assert check_delta_laws(L).ok


@pytest.mark.parametrize("shape", [s for s, _ in grid_powers()])
def test_grid_powers_pass_axioms(shape):
    G = dict(grid_powers())[shape]
    assert G.size <= 20
    assert check_lm_axioms(G).ok


def test_fixture_shapes():
    assert fixture("TRIV2").size == 2
    C = fixture("CHAIN3")
    assert C.names == ("0", "c", "1")
    c = C.index("c")
    assert C.s(1, 1)[c] == C.index("0") and C.s(2, 1)[c] == C.index("1") and C.neg[c] == c
    assert fixture("SIX").size == 6
    P = fixture("PROD")
    x = P.index("(c,0)")
    assert P.names[P.exists[x]] == "(c,c)"


def test_mutated_sigma_names_c5():
    C = fixture("CHAIN3")
    s21 = list(C.s(2, 1))
    s21[C.index("c")] = C.index("0")
    bad = replace(C, sigma=(C.s(1, 1), tuple(s21)))
    rep = check_lm_axioms(bad)
    assert "C5" in rep.laws()
    c5 = next(v for v in rep.violations if v.law == "C5")
    assert set(c5.witness) == {C.index("0"), C.index("c")}


def test_wrong_sigma_shape():
    C = fixture("CHAIN3")
    with pytest.raises(StructuralError):
        replace(C, sigma=(C.s(1, 1),))


class TestBooleanCenter:
    def test_chain3(self):
        C = fixture("CHAIN3")
        assert names(C, boolean_center(C)) == ["0", "1"]

    def test_triv2_whole(self):
        T = fixture("TRIV2")
        assert boolean_center(T) == T.full

    def test_six_is_sigma_image(self):
        S = fixture("SIX")
        bc = boolean_center(S)
        for s in S.sigma:
            assert mask_of(s) == bc
        # constant grids only
        assert names(S, bc) == ["0000", "1111"]


class TestDelta:
    def test_examples(self):
        C = fixture("CHAIN3")
        z, c, one = C.index("0"), C.index("c"), C.index("1")
        assert delta(C, c, c) == one
        assert delta(C, z, c) == z
        assert delta(C, c, one) == C.s(1, 1)[c] == z

    @pytest.mark.parametrize("name", FIXTURES)
    def test_symmetric(self, name):
        L = fixture(name)
        for a, b in product(range(L.size), repeat=2):
            assert delta(L, a, b) == delta(L, b, a)


def test_implication_examples():
    C = fixture("CHAIN3")
    z, c, one = C.index("0"), C.index("c"), C.index("1")
    assert implication(C, z, z) == one
    assert implication(C, one, z) == z
    assert implication(C, c, z) == one


class TestFilters:
    def test_stone_filters_chain3(self):
        C = fixture("CHAIN3")
        assert [names(C, F) for F in stone_filters(C)] == [["1"], ["0", "c", "1"]]
        assert not is_stone_filter(C, mask_of([C.index("c"), C.index("1")]))

    def test_stone_filters_triv2(self):
        T = fixture("TRIV2")
        assert [names(T, F) for F in stone_filters(T)] == [["1"], ["0", "1"]]

    @pytest.mark.parametrize("name", FIXTURES)
    def test_stone_filters_contain_one_and_meet_closed(self, name):
        L = fixture(name)
        fs = stone_filters(L)
        assert all(F >> L.one & 1 for F in fs)
        assert all(F & G in fs for F in fs for G in fs)
        assert fs == deductive_systems(L)

    @pytest.mark.parametrize("name", ["CHAIN3", "SIX", "PROD"])
    def test_generated_system_matches_sigma_route(self, name):
        L = fixture(name)
        s11 = L.s(1, 1)
        for x in range(L.size):
            X = 1 << x
            assert deductive_system_generated(L, X) == filter_generated(L, 1 << s11[x])

    def test_cap(self):
        with pytest.raises(CapExceeded):
            stone_filters(fixture("PROD"), Caps(carrier=4))


class TestCentred:
    def test_chain3(self):
        C = fixture("CHAIN3")
        fam = is_centred(C)
        assert fam == {(1, 1): C.index("1"), (2, 1): C.index("c")}

    def test_triv2(self):
        T = fixture("TRIV2")
        assert is_centred(T) == {(1, 1): T.index("1")}

    def test_boolean_pair_in_chain3_not_centred(self):
        C = fixture("CHAIN3")
        sub, _ = subalgebra(C, mask_of([C.zero, C.one]))
        assert (sub.n, sub.m) == (3, 2)
        assert is_centred(sub) is None

    def test_centring_family_profile(self):
        S = fixture("SIX")
        fam = is_centred(S)
        for (i, j), c in fam.items():
            for (r, s), t in zip(S.indices, S.sigma):
                want = S.one if (i <= r and j <= s) else S.zero
                assert t[c] == want


def test_subalgebra_rejects_open_set():
    C = fixture("CHAIN3")
    with pytest.raises(Rejected):
        subalgebra(C, mask_of([C.index("c")]))
