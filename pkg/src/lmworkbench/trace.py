"""Result-to-check traceability: each anchor runs the checks behind one result."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .core import DEFAULT_CAPS, Caps, CapExceeded, ConsistencyError, Rejected, Report
from .congruence import (
    all_congruences, certify_discriminator, check_delta_compatibility, count_congruences,
    discriminator_consequences, gamma_diagram, is_simple, principal_congruence,
    principal_lattice,
)
from .duality import closed_semimodal_sets, principal_subset, roundtrip_check, space_roundtrip_check, spectrum
from .lm import LmAlgebra, check_de_morgan, check_delta_laws, check_lm_axioms
from .quantifier import (
    check_quantifier, check_universal, derived_law_suite, enumerate_quantifiers, range_profile,
)
from .representation import (
    commuting_diagram_check, constants, omega_embedding, psi_embedding, richness_via_filters,
    tau_embedding, unwitnessed,
)


@dataclass
class TraceRow:
    anchor: str
    status: str  # pass, fail or skip
    detail: str = ""


def _from_report(rep: Report, ok_detail: str = "") -> tuple:
    if rep.ok:
        return "pass", ok_detail
    return "fail", "violations: " + ",".join(rep.laws())


def _lm_axioms(L, caps):
    rep = Report()
    rep.extend(check_de_morgan(L))
    rep.extend(check_lm_axioms(L))
    if rep.ok:
        rep.extend(check_delta_laws(L))
    return _from_report(rep, "C1-C7, T1-T6")


def _quantifier_axioms(L, caps):
    rep = Report()
    rep.extend(check_quantifier(L, L.exists))
    if rep.ok:
        rep.extend(check_universal(L, L.forall))
        rep.extend(derived_law_suite(L, L.exists))
        rep.extend(range_profile(L, L.exists).report)
    return _from_report(rep, "e1-e24, range conditions")


def _quantifier_ranges(L, caps):
    qs = enumerate_quantifiers(L.reduct(), caps)
    if L.exists not in qs:
        return "fail", "quantifier missing from enumeration"
    return "pass", f"{len(qs)} quantifier(s), both routes agree"


def _congruence_filters(L, caps):
    cons = all_congruences(L, caps)
    rep = Report()
    rep.extend(gamma_diagram(L, caps).report)
    rep.extend(check_delta_compatibility(L, caps))
    return _from_report(rep, f"{len(cons)} congruences = R(ms-filters)")


def _simplicity(L, caps):
    v = is_simple(L, caps)
    return "pass", ("simple" if v.simple else "not simple") + ", four conditions agree"


def _discriminator(L, caps):
    rep = discriminator_consequences(L, caps)
    simple = is_simple(L, caps).simple
    if simple:
        rep.extend(certify_discriminator(L, caps))
    return _from_report(rep, "ternary discriminator" if simple else "consequences only")


def _principal(L, caps):
    for a, b in product(range(L.size), repeat=2):
        principal_congruence(L, a, b)
    pl = principal_lattice(L, caps)
    return _from_report(pl.report, f"{len(pl.elements)} principal congruences")


def _count(L, caps):
    count, atoms = count_congruences(L, caps)
    return "pass", f"congruences={count} atoms={len(atoms)}"


def _duality(L, caps):
    cert = roundtrip_check(L, caps)
    rep = Report()
    rep.extend(cert.report)
    rep.extend(space_roundtrip_check(spectrum(L, caps), caps).report)
    res = closed_semimodal_sets(L, caps)
    for a, b in product(range(L.size), repeat=2):
        principal_subset(L, a, b, caps)
    return _from_report(rep, f"{res.space.size} points, {len(res.sets)} closed semimodal sets")


def _tau(L, caps):
    t = tau_embedding(L, caps)
    rep = Report()
    rep.extend(t.report)
    return _from_report(rep, "bijective" if t.surjective else "injective, not onto")


def _functional(L, caps):
    cs = constants(L, caps)
    cert = richness_via_filters(L, cs, caps)
    if not cert.rich:
        return "pass", f"not rich ({len(unwitnessed(L, cs))} unwitnessed), filter test agrees"
    rep = Report()
    rep.extend(omega_embedding(L, cs, caps).report)
    rep.extend(psi_embedding(L, caps=caps).report)
    rep.extend(commuting_diagram_check(L, caps).report)
    return _from_report(rep, f"rich, {len(cs)} constant(s), square commutes")


ANCHORS = (
    ("lm-axioms", _lm_axioms),
    ("quantifier-axioms", _quantifier_axioms),
    ("quantifier-ranges", _quantifier_ranges),
    ("congruences-ms-filters", _congruence_filters),
    ("simplicity", _simplicity),
    ("discriminator", _discriminator),
    ("principal-congruences", _principal),
    ("congruence-count", _count),
    ("duality-roundtrip", _duality),
    ("grid-embedding", _tau),
    ("functional-representations", _functional),
)


def run_trace(L: LmAlgebra, caps: Caps = DEFAULT_CAPS) -> list:
    """One row per anchor.  Cap overruns propagate; other failures become ``fail``."""
    if L.exists is None:
        raise Rejected("trace needs a monadic algebra")
    rows = []
    for name, fn in ANCHORS:
        try:
            status, detail = fn(L, caps)
        except CapExceeded:
            raise
        except ConsistencyError as e:
            status, detail = "fail", str(e)
        except Rejected as e:
            status, detail = "skip", str(e)
        rows.append(TraceRow(name, status, detail))
    return rows
