from dataclasses import replace
from itertools import product

import pytest

from _support import FIXTURES, monadic_cases
from lmworkbench.core import Partition, Rejected, StructuralError, enumerate_upsets
from lmworkbench.congruence import all_congruences, principal_congruence
from lmworkbench.duality import (
    MlmSpace, check_mlm_space, closed_semimodal_sets, dual_algebra, preimage, prime_filters,
    principal_subset, roundtrip_check, sigma_L, space_isomorphism, space_roundtrip_check,
    spectrum, theta_of,
)
from lmworkbench.fixtures import fixture
from lmworkbench.lm import lm_isomorphism
from lmworkbench.quantifier import enumerate_quantifiers

MONADIC = monadic_cases()
IDS = [label for label, _ in MONADIC]


def point_space():
    return MlmSpace(("p",), ((True,),), (0,), ((0,),), Partition.total(1), 2, 2)


class TestCheckSpace:
    def test_single_point(self):
        rep = check_mlm_space(point_space())
        assert rep.ok
        assert any("ml2" in note for note in rep.notes)

    def test_spectrum_chain3_passes(self):
        assert check_mlm_space(spectrum(fixture("CHAIN3"))).ok

    def test_merging_e_classes_breaks_ml3(self):
        X = spectrum(fixture("PROD_ID"))
        assert X.E.is_identity
        Y = replace(X, E=Partition.from_blocks(4, [[0], [1, 3], [2]]))
        rep = check_mlm_space(Y)
        assert rep.laws() == ["ml3"]
        assert rep.violations[0].witness[:2] in {(1, 1), (2, 1)}

    def test_broken_involution(self):
        X = spectrum(fixture("CHAIN3"))
        rep = check_mlm_space(replace(X, g=(0, 0)))
        assert "E1" in rep.laws()

    def test_shape_mismatch(self):
        with pytest.raises(StructuralError):
            MlmSpace(("p", "q"), ((True,),), (0,), ((0,),), Partition.total(1), 2, 2)


class TestDualAlgebra:
    def test_point_space_is_triv2(self):
        D = dual_algebra(point_space())
        assert lm_isomorphism(D, fixture("TRIV2")) is not None

    @pytest.mark.parametrize("name", ["CHAIN3", "PROD", "PROD_ID", "SIX"])
    def test_dual_of_spectrum_isomorphic(self, name):
        L = fixture(name)
        assert lm_isomorphism(dual_algebra(spectrum(L)), L) is not None

    def test_invalid_space_rejected(self):
        X = spectrum(fixture("PROD_ID"))
        with pytest.raises(Rejected):
            dual_algebra(replace(X, E=Partition.from_blocks(4, [[0], [1, 3], [2]])))


class TestSpectrum:
    def test_chain3(self):
        C = fixture("CHAIN3")
        X = spectrum(C)
        assert [C.name_set(P) for P in prime_filters(C)] == [["1"], ["c", "1"]]
        assert X.leq == ((True, True), (False, True))
        assert X.g == (1, 0)
        assert X.fij(1, 1) == (0, 0) and X.fij(2, 1) == (1, 1)
        assert X.E.is_identity

    def test_triv2(self):
        X = spectrum(fixture("TRIV2"))
        assert X.size == 1 and X.g == (0,) and X.f == ((0,),) and X.E.is_identity

    def test_prod_diagonal(self):
        P = fixture("PROD")
        X = spectrum(P)
        assert X.size == 4 and X.E.n_blocks == 2
        diag = {P.exists[x] for x in range(P.size)}
        pts = prime_filters(P)
        for x, y in product(range(4), repeat=2):
            same_trace = {a for a in diag if pts[x] >> a & 1} == {a for a in diag if pts[y] >> a & 1}
            assert X.E.same(x, y) == same_trace

    def test_one_element_rejected(self):
        from lmworkbench.lm import boolean_algebra
        with pytest.raises(Rejected):
            spectrum(boolean_algebra(0).identity_exists())


class TestRoundTrip:
    def test_chain3_sigma_of_c(self):
        C = fixture("CHAIN3")
        X = spectrum(C)
        assert sigma_L(C, X, C.index("c")) == 0b10
        assert roundtrip_check(C).ok

    def test_triv2(self):
        assert roundtrip_check(fixture("TRIV2")).ok

    def test_six_every_quantifier(self):
        S = fixture("SIX").reduct()
        for q in enumerate_quantifiers(S):
            assert roundtrip_check(S.with_exists(q)).ok

    @pytest.mark.parametrize("name", FIXTURES)
    def test_space_side(self, name):
        X = spectrum(fixture(name))
        cert = space_roundtrip_check(X)
        assert cert.ok
        assert space_isomorphism(X, X) is not None

    def test_isomorphism_search_separates(self):
        a = spectrum(fixture("PROD"))
        b = spectrum(fixture("PROD_ID"))
        assert space_isomorphism(a, b) is None


class TestSemimodal:
    def test_chain3(self):
        C = fixture("CHAIN3")
        res = closed_semimodal_sets(C)
        assert res.sets == [0, 0b11]

    @pytest.mark.parametrize("L", [L for _, L in MONADIC], ids=IDS)
    def test_extremes_and_count(self, L):
        res = closed_semimodal_sets(L)
        X = res.space
        assert theta_of(L, X, X.full).is_identity
        assert theta_of(L, X, 0).is_total
        assert len(res.sets) == len(all_congruences(L))


class TestPrincipalSubset:
    def test_chain3_c_1(self):
        C = fixture("CHAIN3")
        ps = principal_subset(C, C.index("c"), C.one)
        assert ps.points == 0
        assert theta_of(C, spectrum(C), 0).is_total

    def test_diagonal_pairs(self):
        for _, L in MONADIC:
            full = (1 << len(prime_filters(L))) - 1
            for a in range(L.size):
                assert principal_subset(L, a, a).points == full

    def test_prod_identity_example(self):
        L = fixture("PROD_ID")
        X = spectrum(L)
        a, b = L.index("(c,1)"), L.index("(1,1)")
        ps = principal_subset(L, a, b)
        assert ps.points == sigma_L(L, X, L.index("(0,1)"))
        assert theta_of(L, X, ps.points) == principal_congruence(L, a, b)

    def test_unordered_pair_normalized(self):
        C = fixture("CHAIN3")
        P = fixture("PROD_ID")
        ps = principal_subset(P, P.index("(c,0)"), P.index("(0,c)"))
        assert ps.note and ps.normalized == (P.index("(0,0)"), P.index("(c,c)"))
        assert principal_subset(C, C.index("c"), C.one).note == ""
        assert principal_subset(C, C.one, C.index("c")).note


class TestSpaceProperties:
    @pytest.mark.parametrize("L", [L for _, L in MONADIC], ids=IDS)
    def test_saturation_is_closure_like(self, L):
        X = spectrum(L)
        ups = enumerate_upsets(X.leq)
        for U in ups:
            V = X.saturate(U)
            assert U & ~V == 0
            assert X.saturate(V) == V
            for f in X.f:
                assert preimage(f, V) == X.saturate(preimage(f, U))
        for U, W in product(ups, repeat=2):
            if U & ~W == 0:
                assert X.saturate(U) & ~X.saturate(W) == 0

    @pytest.mark.parametrize("L", [L for _, L in MONADIC], ids=IDS)
    def test_sigma_image_is_all_upsets(self, L):
        X = spectrum(L)
        img = [sigma_L(L, X, a) for a in range(L.size)]
        assert len(set(img)) == L.size
        assert sorted(img) == enumerate_upsets(X.leq)

    @pytest.mark.parametrize("name", FIXTURES)
    def test_e6_e7_consistent(self, name):
        X = spectrum(fixture(name))
        for (i, j), f in zip(X.indices, X.f):
            mirror = X.fij(X.n - i, X.m - j)
            twice = X.fij(X.n - (X.n - i), X.m - (X.m - j))
            assert twice == f
            for x in range(X.size):
                assert f[X.g[x]] == f[x]
                assert X.g[f[x]] == mirror[x]
