"""Shared corpora for the test modules."""

from functools import lru_cache

from lmworkbench.fixtures import AUX_NAMES, FIXTURE_NAMES, fixture, two
from lmworkbench.lm import boolean_algebra, subalgebra
from lmworkbench.quantifier import enumerate_quantifiers, lm_subalgebras
from lmworkbench.representation import grid_power

# every fixture that fits the default caps (SIX2 needs raised caps)
FIXTURES = FIXTURE_NAMES + ("PROD_ID", "BOOL32")
assert set(FIXTURES) <= set(FIXTURE_NAMES + AUX_NAMES)


@lru_cache(maxsize=None)
def monadic_cases() -> tuple:
    """(label, algebra) for every fixture paired with every quantifier on its reduct."""
    out = []
    seen = set()
    for name in FIXTURES:
        L = fixture(name)
        for k, q in enumerate(enumerate_quantifiers(L.reduct())):
            key = (L.names, L.meet, L.sigma, q)
            if key in seen:
                continue
            seen.add(key)
            out.append((f"{name}/q{k}", L.with_exists(q)))
    return tuple(out)


@lru_cache(maxsize=None)
def grid_powers() -> tuple:
    """2 raised to each grid shape, quantifier acting entrywise by the identity."""
    base = two().identity_exists()
    return tuple(((n, m), grid_power(base, n, m)) for n in (2, 3, 4) for m in (2, 3, 4))


@lru_cache(maxsize=None)
def small_lm_algebras(limit: int = 9) -> tuple:
    """LM reducts with at most ``limit`` elements: grids, Boolean algebras,
    fixtures, and every LM subalgebra of PROD and SIX."""
    out = [(f"grid{n}x{m}", G.reduct()) for (n, m), G in grid_powers() if G.size <= limit]
    out += [(f"bool{k}", boolean_algebra(k).reduct()) for k in (1, 2, 3)]
    out += [(name, fixture(name).reduct()) for name in FIXTURES if fixture(name).size <= limit]
    for name in ("PROD", "SIX"):
        L = fixture(name).reduct()
        for mask in lm_subalgebras(L):
            sub, _ = subalgebra(L, mask, use_exists=False)
            out.append((f"{name}-sub{mask}", sub))
    return tuple(out)
