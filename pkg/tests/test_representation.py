from math import comb

import pytest

from _support import monadic_cases
from lmworkbench.core import Caps, CapExceeded, Rejected
from lmworkbench.fixtures import fixture, two
from lmworkbench.lm import check_lm_axioms, lm_isomorphism
from lmworkbench.quantifier import check_quantifier
from lmworkbench.representation import (
    boolean_center_algebra, commuting_diagram_check, constants, functional_power, grid_power,
    interval_algebra, is_rich, omega_embedding, psi_embedding, richness_via_filters,
    tau_embedding, unwitnessed, witnesses,
)

MONADIC = monadic_cases()
IDS = [label for label, _ in MONADIC]
TWO = two().identity_exists()


class TestGridPower:
    @pytest.mark.parametrize("n,m", [(2, 2), (3, 2), (2, 3), (3, 3), (4, 3)])
    def test_size_over_two(self, n, m):
        assert grid_power(TWO, n, m).size == comb(n + m - 2, n - 1)

    def test_non_boolean_base_rejected(self):
        with pytest.raises(Rejected):
            grid_power(fixture("CHAIN3"), 2, 2)

    def test_cap(self):
        with pytest.raises(CapExceeded):
            grid_power(TWO, 4, 4, Caps(carrier=10))

    def test_quantifier_acts_entrywise(self):
        G = grid_power(TWO, 3, 2)
        assert G.exists == (0, 1, 2)
        assert check_quantifier(G, G.exists).ok


class TestTau:
    def test_chain3(self):
        t = tau_embedding(fixture("CHAIN3"))
        assert t.target.names == ("00", "01", "11")
        assert t.morphism.map == (0, 1, 2)
        assert t.report.ok and t.surjective and t.centred is not None

    def test_bool32_not_surjective(self):
        t = tau_embedding(fixture("BOOL32"))
        assert t.morphism.map == (0, 2)
        assert t.injective and not t.surjective and t.centred is None

    @pytest.mark.parametrize("L", [L for _, L in MONADIC], ids=IDS)
    def test_always_an_embedding(self, L):
        t = tau_embedding(L)
        assert t.report.ok and t.injective


class TestFunctionalPower:
    def test_one_point_is_grid(self):
        F = functional_power(TWO, 1, 3, 2)
        assert F.names == ("<00>", "<01>", "<11>")
        assert lm_isomorphism(F, fixture("CHAIN3")) is not None

    def test_two_points_is_prod(self):
        F = functional_power(TWO, 2, 3, 2)
        assert F.size == 9
        assert check_lm_axioms(F).ok and check_quantifier(F, F.exists).ok
        assert lm_isomorphism(F, fixture("PROD")) is not None

    def test_empty_index_set(self):
        with pytest.raises(Rejected):
            functional_power(TWO, 0, 2, 2)


class TestConstants:
    def test_chain3_only_identity(self):
        assert constants(fixture("CHAIN3")) == [(0, 1, 2)]

    def test_prod_projections(self):
        P = fixture("PROD")
        first = tuple(P.index(f"({a},{a})") for a, _ in
                      (name.strip("()").split(",") for name in P.names))
        second = tuple(P.index(f"({b},{b})") for _, b in
                       (name.strip("()").split(",") for name in P.names))
        assert sorted(constants(P)) == sorted([first, second])

    @pytest.mark.parametrize("L", [L for _, L in MONADIC], ids=IDS)
    def test_identity_is_constant_iff_identity_quantifier(self, L):
        ident = tuple(range(L.size))
        unrestricted = constants(L, restrict=False)
        assert (ident in unrestricted) == (L.exists == ident)
        assert sorted(unrestricted) == sorted(constants(L))

    def test_witnesses(self):
        P = fixture("PROD")
        x = P.index("(c,0)")
        ws = witnesses(P, x)
        assert len(ws) == 1 and ws[0][x] == P.index("(c,c)")
        assert unwitnessed(P) == []

    def test_quantifier_required(self):
        with pytest.raises(Rejected):
            constants(fixture("CHAIN3").reduct())


class TestOmegaPsi:
    def test_prod_omega(self):
        P = fixture("PROD")
        om = omega_embedding(P)
        assert om.report.ok and om.injective
        names = [tuple(P.names[v] for v in img) for img in om.images]
        x = P.index("(c,0)")
        assert sorted(names[x]) == ["(0,0)", "(c,c)"]

    def test_prod_psi(self):
        P = fixture("PROD")
        ps = psi_embedding(P)
        assert ps.report.ok and ps.injective
        assert len(ps.constants) == 2

    def test_omega_rejects_non_rich(self):
        S = fixture("SIX2")
        big = Caps(40, 40, 40)
        cs = constants(S, big)
        with pytest.raises(Rejected, match="not rich"):
            omega_embedding(S, cs, big)

    @pytest.mark.parametrize("L", [L for _, L in MONADIC], ids=IDS)
    def test_rich_fixtures(self, L):
        cs = constants(L)
        assert is_rich(L, cs)
        assert omega_embedding(L, cs).report.ok
        BL, _ = boolean_center_algebra(L)
        if is_rich(BL):
            assert psi_embedding(L).report.ok


class TestInterval:
    def test_prod_side(self):
        P = fixture("PROD")
        I, h = interval_algebra(P, P.index("(1,0)"))
        assert I.names == ("(0,0)", "(c,0)", "(1,0)")
        assert h == (0, 0, 0, 1, 1, 1, 2, 2, 2)
        assert lm_isomorphism(I, fixture("CHAIN3")) is not None

    def test_bottom_is_trivial(self):
        P = fixture("PROD")
        I, h = interval_algebra(P, P.zero)
        assert I.size == 1 and set(h) == {0}

    def test_non_boolean_rejected(self):
        C = fixture("CHAIN3")
        with pytest.raises(Rejected):
            interval_algebra(C, C.index("c"))


class TestRichness:
    def test_prod_bounds(self):
        P = fixture("PROD")
        cert = richness_via_filters(P)
        assert cert.rich
        assert {P.names[b] for b in cert.bounds.values()} <= {"(1,0)", "(0,1)"}

    def test_six2_not_rich(self):
        S = fixture("SIX2")
        big = Caps(40, 40, 40)
        cs = constants(S, big)
        assert len(cs) == 2
        bad = sorted(S.names[x] for x in unwitnessed(S, cs))
        assert bad == ["(0011,0101)", "(0101,0011)"]
        cert = richness_via_filters(S, cs, big)
        assert not cert.rich
        assert {S.names[x] for x, b in cert.bounds.items() if b is None} == set(bad)


class TestDiagram:
    @pytest.mark.parametrize("L", [L for _, L in MONADIC], ids=IDS)
    def test_commutes(self, L):
        d = commuting_diagram_check(L)
        assert d.report.ok
        assert d.lhs == d.rhs

    def test_prod_restricted_constants(self):
        d = commuting_diagram_check(fixture("PROD"))
        assert len(d.constants_L) == 2 and len(d.constants_B) == 2
