import pytest

from _support import FIXTURES, monadic_cases
from lmworkbench.core import Rejected, mask_of
from lmworkbench.fixtures import fixture
from lmworkbench.lm import boolean_algebra
from lmworkbench.quantifier import (
    check_monadic_boolean, check_quantifier, check_universal, derived_law_suite,
    diagonal_join, enumerate_quantifiers, forall_of, quantifier_from_moore_family,
    quantifiers_brute_force, quantifiers_from_families, range_profile,
    relative_pseudocomplement,
)

MONADIC = monadic_cases()
IDS = [label for label, _ in MONADIC]


class TestCheckQuantifier:
    def test_identity_on_chain3(self):
        C = fixture("CHAIN3")
        assert check_quantifier(C, tuple(range(3))).ok

    def test_lifting_c_violates_e4(self):
        C = fixture("CHAIN3")
        rep = check_quantifier(C, (0, 2, 2))
        assert rep.laws() == ["e4"]
        v = rep.violations[0]
        assert v.witness == (1, 1, C.index("c"))

    def test_diagonal_join_on_prod(self):
        P = fixture("PROD")
        assert check_quantifier(P, P.exists).ok

    def test_non_extensive_map_fails_e2(self):
        C = fixture("CHAIN3")
        assert "e2" in check_quantifier(C, (0, 0, 2)).laws()


@pytest.mark.parametrize("L", [L for _, L in MONADIC], ids=IDS)
def test_derived_laws_and_universal_view(L):
    assert derived_law_suite(L, L.exists).ok
    assert check_universal(L, L.forall).ok
    assert check_monadic_boolean(L, L.exists).ok
    # dualising back recovers the quantifier
    assert forall_of(L, L.forall) == L.exists


def test_e21_spot_value_on_prod():
    P = fixture("PROD")
    x = P.index("(c,0)")
    assert P.names[P.forall[x]] == "(0,0)"
    assert P.exists[P.forall[x]] == P.forall[x]


class TestRangeProfile:
    def test_identity_range_is_whole_carrier(self):
        C = fixture("CHAIN3")
        prof = range_profile(C, C.exists)
        assert prof.ok and prof.members == C.full

    def test_prod_diagonal(self):
        P = fixture("PROD")
        prof = range_profile(P, P.exists)
        assert prof.ok
        assert P.name_set(prof.members) == ["(0,0)", "(c,c)", "(1,1)"]
        x = P.index("(c,0)")
        above = [z for z in range(P.size) if prof.members >> z & 1 and P.leq[x][z]]
        assert P.names[P.meet_all(above)] == "(c,c)" == P.names[P.exists[x]]


class TestFromMooreFamily:
    def test_whole_carrier_gives_identity(self):
        C = fixture("CHAIN3")
        assert quantifier_from_moore_family(C, C.full) == (0, 1, 2)

    def test_diagonal_gives_diagonal_join(self):
        P = fixture("PROD")
        diag = mask_of(P.exists)
        assert quantifier_from_moore_family(P, diag) == diagonal_join(fixture("CHAIN3"))

    def test_boolean_pair_in_chain3_rejected_at_iii(self):
        C = fixture("CHAIN3")
        M = mask_of([C.zero, C.one])
        with pytest.raises(Rejected, match=r"\(iii\)"):
            quantifier_from_moore_family(C, M)

    def test_partial_converse_record(self):
        C = fixture("CHAIN3")
        record = []
        quantifiers_from_families(C.reduct(), record)
        assert [M for M, _ in record] == [mask_of([C.zero, C.one])]

    def test_relative_pseudocomplement(self):
        C = fixture("CHAIN3")
        z, c, one = C.index("0"), C.index("c"), C.index("1")
        assert relative_pseudocomplement(C, c, z) == z
        assert relative_pseudocomplement(C, c, c) == one


class TestEnumeration:
    def test_chain3(self):
        assert enumerate_quantifiers(fixture("CHAIN3").reduct()) == [(0, 1, 2)]

    def test_triv2(self):
        assert enumerate_quantifiers(fixture("TRIV2").reduct()) == [(0, 1)]

    def test_prod_contains_identity_and_diagonal(self):
        P = fixture("PROD")
        qs = enumerate_quantifiers(P.reduct())
        assert tuple(range(9)) in qs and P.exists in qs

    @pytest.mark.parametrize("k,bell", [(1, 1), (2, 2), (3, 5)])
    def test_boolean_counts_are_bell_numbers(self, k, bell):
        assert len(enumerate_quantifiers(boolean_algebra(k))) == bell

    @pytest.mark.parametrize("name", FIXTURES)
    def test_routes_agree_and_sorted(self, name):
        L = fixture(name).reduct()
        brute = quantifiers_brute_force(L)
        assert brute == quantifiers_from_families(L) == sorted(brute)

    def test_fixed_points_coincide(self):
        for _, L in MONADIC:
            for x in range(L.size):
                assert (L.exists[x] == x) == (L.forall[x] == x)
