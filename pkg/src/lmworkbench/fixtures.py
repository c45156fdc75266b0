"""Named test algebras.

TRIV2, CHAIN3 and SIX are the grid powers of the two-element Boolean algebra
of types 2x2, 3x2 and 3x3, with the identity quantifier.  PROD is CHAIN3
squared with the diagonal join quantifier.  The remaining names are auxiliary
algebras the checks need: PROD_ID (identity quantifier), BOOL32 (the
non-centred Boolean subalgebra {0,1} of CHAIN3 read as type 3x2) and SIX2
(SIX squared with the diagonal join, which is not rich).
"""

from __future__ import annotations

from .core import mask_of
from .lm import LmAlgebra, boolean_algebra, product_algebra, relabel, subalgebra
from .quantifier import diagonal_join
from .representation import grid_power

FIXTURE_NAMES = ("TRIV2", "CHAIN3", "SIX", "PROD")
AUX_NAMES = ("PROD_ID", "BOOL32", "SIX2")


def two() -> LmAlgebra:
    return boolean_algebra(1)


def triv2() -> LmAlgebra:
    return relabel(grid_power(two(), 2, 2), ("0", "1")).identity_exists()


def chain3() -> LmAlgebra:
    return relabel(grid_power(two(), 3, 2), ("0", "c", "1")).identity_exists()


def six() -> LmAlgebra:
    return grid_power(two(), 3, 3).identity_exists()


def prod() -> LmAlgebra:
    c = chain3().reduct()
    return product_algebra(c, c, exists=diagonal_join(c))


def prod_id() -> LmAlgebra:
    return prod().identity_exists()


def bool32() -> LmAlgebra:
    c = chain3()
    sub, _ = subalgebra(c, mask_of((c.zero, c.one)))
    return sub


def six2() -> LmAlgebra:
    s = six().reduct()
    return product_algebra(s, s, exists=diagonal_join(s))


_BUILDERS = {
    "TRIV2": triv2, "CHAIN3": chain3, "SIX": six, "PROD": prod,
    "PROD_ID": prod_id, "BOOL32": bool32, "SIX2": six2,
}


def fixture(name: str) -> LmAlgebra:
    try:
        return _BUILDERS[name.upper()]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; choose from "
                       f"{', '.join(FIXTURE_NAMES + AUX_NAMES)}") from None
