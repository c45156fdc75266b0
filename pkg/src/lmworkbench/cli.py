"""``lmwb``: command-line front end.

Exit codes: 0 every check passed, 1 a law or verification failed, 2 the input
is malformed (parse or shape error, missing table), 3 a size cap was exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from pathlib import Path

from .core import (
    DEFAULT_CARRIER_CAP, DEFAULT_ENDO_CAP, DEFAULT_UPSET_CAP, Caps, CapExceeded,
    ConsistencyError, Rejected, Report, StructuralError, members, validate_lattice,
)
from . import documents as docs
from .fixtures import AUX_NAMES, FIXTURE_NAMES, fixture

EXIT_OK, EXIT_FAIL, EXIT_STRUCTURAL, EXIT_CAP = 0, 1, 2, 3
MAX_VIOLATIONS_SHOWN = 20


class Output:
    """Summary pairs plus named tables, rendered as text or tab-separated."""

    def __init__(self):
        self.summary = []
        self.tables = []

    def kv(self, key, value):
        self.summary.append((key, str(value)))

    def table(self, name, header, rows):
        self.tables.append((name, list(header), [[str(c) for c in r] for r in rows]))

    def render(self, structured: bool) -> str:
        buf = io.StringIO()
        if structured:
            w = csv.writer(buf, delimiter="\t", lineterminator="\n")
            w.writerow(["#summary"])
            w.writerow(["key", "value"])
            w.writerows(self.summary)
            for name, header, rows in self.tables:
                w.writerow([f"#table {name}"])
                w.writerow(header)
                w.writerows(rows)
            return buf.getvalue()
        if self.summary:
            buf.write(" ".join(f"{k}={v}" for k, v in self.summary) + "\n")
        for name, header, rows in self.tables:
            buf.write(f"\n[{name}]\n")
            widths = [max(len(r[c]) for r in [header] + rows) for c in range(len(header))]
            for r in [header] + rows:
                buf.write("  ".join(v.ljust(wd) for v, wd in zip(r, widths)).rstrip() + "\n")
        return buf.getvalue()


# --------------------------------------------------------------------------
# helpers


def _caps(args) -> Caps:
    return Caps(args.cap_carrier, args.cap_endo, args.cap_upsets)


def _load_algebra(path):
    doc = docs.load(path)
    if not isinstance(doc, docs.AlgebraDocument):
        raise docs.DocumentError("expected an algebra document")
    return docs.to_algebra(doc)


def _monadic(L):
    if L.exists is None:
        raise docs.DocumentError("document has no exists table")
    return L


def _set(L, mask) -> str:
    return "{" + ",".join(L.name_set(mask)) + "}"


def _blocks(names, part) -> str:
    return "".join("{" + ",".join(names[x] for x in b) + "}" for b in part.blocks())


def _violations(out: Output, suite: str, rep: Report, rows: list):
    out.kv(suite, "pass" if rep.ok else f"fail({len(rep.violations)})")
    for v in rep.violations[:MAX_VIOLATIONS_SHOWN]:
        rows.append([suite, v.law, " ".join(map(str, v.witness)), v.detail])


def _plot(args, out: Output, kind: str, fn_name: str, *objs):
    """Render one figure when --plot-dir is set; matplotlib is imported only then."""
    if not args.plot_dir:
        return
    from . import plots

    path = Path(args.plot_dir) / f"{Path(args.path).stem}-{kind}.png"
    getattr(plots, fn_name)(*objs, path)
    out.kv(f"plot_{kind}", path)


# --------------------------------------------------------------------------
# commands


def cmd_fixture(args, out):
    L = fixture(args.name)
    text = docs.emit(docs.from_algebra(L, {"fixture": args.name.upper()}))
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
        out.kv("written", args.output)
        return EXIT_OK
    sys.stdout.write(text)
    return None


def cmd_check(args, out):
    from .duality import check_mlm_space
    from .lm import check_de_morgan, check_delta_laws, check_lm_axioms
    from .quantifier import check_quantifier

    doc = docs.load(args.path)
    rows = []
    if isinstance(doc, docs.SpaceDocument):
        X = docs.to_space(doc)
        rep = check_mlm_space(X, _caps(args))
        _violations(out, "mlm-space", rep, rows)
        for note in rep.notes:
            rows.append(["mlm-space", "note", "", note])
        out.table("violations", ["suite", "law", "witness", "detail"], rows)
        return EXIT_OK if rep.ok else EXIT_FAIL
    L = docs.to_algebra(doc)
    _caps(args).require("carrier", L.size)
    ok = True
    lat = validate_lattice(L.meet, L.join, L.leq)
    _violations(out, "lattice", lat, rows)
    if lat.ok:
        dm, lm = check_de_morgan(L), check_lm_axioms(L)
        _violations(out, "de-morgan", dm, rows)
        _violations(out, "lm-axioms", lm, rows)
        ok = dm.ok and lm.ok
        if ok:
            d = check_delta_laws(L)
            _violations(out, "delta-laws", d, rows)
            ok = d.ok
        if L.exists is not None:
            q = check_quantifier(L, L.exists)
            _violations(out, "quantifier", q, rows)
            ok = ok and q.ok
    ok = ok and lat.ok
    out.kv("status", "pass" if ok else "fail")
    out.table("violations", ["suite", "law", "witness", "detail"], rows)
    if lat.ok:
        _plot(args, out, "order", "plot_algebra", L)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_quantifiers(args, out):
    from .quantifier import enumerate_quantifiers

    L = _load_algebra(args.path)
    qs = enumerate_quantifiers(L.reduct(), _caps(args))
    out.kv("quantifiers", len(qs))
    rows = []
    for k, q in enumerate(qs):
        table = ",".join(f"{L.names[x]}>{L.names[q[x]]}" for x in range(L.size))
        rows.append([k, _set(L, sum(1 << v for v in set(q))), table,
                     "yes" if L.exists == q else "no"])
    out.table("quantifiers", ["index", "range", "map", "document"], rows)
    return EXIT_OK


def cmd_congruences(args, out):
    from .congruence import all_congruences, count_congruences, one_class

    L = _monadic(_load_algebra(args.path))
    caps = _caps(args)
    count, atoms = count_congruences(L, caps)
    cons = all_congruences(L, caps).elements
    out.kv("congruences", count)
    out.kv("atoms", len(atoms))
    rows = [[k, _blocks(L.names, p), _set(L, one_class(p, L))] for k, p in enumerate(cons)]
    out.table("congruences", ["index", "blocks", "ms-filter"], rows)
    _plot(args, out, "congruences", "plot_congruences", cons)
    return EXIT_OK


def _space_rows(X):
    head = ["point", "name", "up", "g"] + [f"f{i},{j}" for i, j in X.indices] + ["E"]
    rows = []
    for x in range(X.size):
        up = ",".join(str(y) for y in range(X.size) if X.leq[x][y])
        rows.append([x, X.names[x], up, X.g[x]] + [f[x] for f in X.f] + [X.E.block_of[x]])
    return head, rows


def cmd_spectrum(args, out):
    from .duality import spectrum

    L = _monadic(_load_algebra(args.path))
    X = spectrum(L, _caps(args))
    out.kv("points", X.size)
    out.kv("E_blocks", X.E.n_blocks)
    out.table("points", *_space_rows(X))
    _plot(args, out, "spectrum", "plot_space", X)
    return EXIT_OK


def cmd_roundtrip(args, out):
    from .duality import prime_filters, roundtrip_check, sigma_L, space_roundtrip_check, spectrum

    doc = docs.load(args.path)
    caps = _caps(args)
    if isinstance(doc, docs.SpaceDocument):
        X = docs.to_space(doc)
        cert = space_roundtrip_check(X, caps)
        rows = [[X.names[x], cert.map[x]] for x in range(X.size)]
        out.table("point-map", ["point", "spectrum point"], rows)
    else:
        L = _monadic(docs.to_algebra(doc))
        cert = roundtrip_check(L, caps)
        X = spectrum(L, caps)
        pts = prime_filters(L)
        rows = [[L.names[a], "{" + ",".join(str(p) for p in members(sigma_L(L, X, a, pts))) + "}",
                 cert.map[a]] for a in range(L.size)]
        out.table("sigma_L", ["element", "points", "dual index"], rows)
    out.kv("roundtrip", "iso" if cert.ok else "fail")
    if not cert.ok:
        v = cert.report.violations[0]
        out.kv("first_failure", f"{v.law}@{' '.join(map(str, v.witness))}")
        return EXIT_FAIL
    return EXIT_OK


def _grid(B, g) -> str:
    return "(" + ",".join(B.names[v] for v in g) + ")"


def cmd_represent(args, out):
    from .representation import (
        boolean_center_algebra, commuting_diagram_check, omega_embedding, psi_embedding,
        tau_embedding,
    )

    L = _load_algebra(args.path)
    caps = _caps(args)
    which = args.which
    if which == "tau":
        t = tau_embedding(L, caps)
        out.kv("injective", t.injective)
        out.kv("surjective", t.surjective)
        out.kv("centred", t.centred is not None)
        rows = [[L.names[x], t.target.names[t.morphism.map[x]]] for x in range(L.size)]
        out.table("tau", ["element", "grid"], rows)
        rep = t.report
    else:
        _monadic(L)
        BL, _ = boolean_center_algebra(L)
        if which == "omega":
            o = omega_embedding(L, caps=caps)
            out.kv("constants", len(o.constants))
            rows = [[L.names[x], "(" + ",".join(L.names[v] for v in o.images[x]) + ")"]
                    for x in range(L.size)]
            out.table("omega", ["element", "values by constant"], rows)
            rep = o.report
        elif which == "psi":
            p = psi_embedding(L, caps=caps)
            out.kv("constants", len(p.constants))
            rows = [[L.names[x], " ".join(_grid(BL, g) for g in p.images[x])]
                    for x in range(L.size)]
            out.table("psi", ["element", "grid by constant"], rows)
            rep = p.report
        else:
            d = commuting_diagram_check(L, caps)
            out.kv("constants_L", len(d.constants_L))
            out.kv("constants_B", len(d.constants_B))
            rows = [[L.names[x], " ".join(_grid(BL, g) for g in d.lhs[x]),
                     " ".join(_grid(BL, g) for g in d.rhs[x]),
                     "yes" if d.lhs[x] == d.rhs[x] else "no"] for x in range(L.size)]
            out.table("diagram", ["element", "P.tau*.Omega", "Psi", "equal"], rows)
            rep = d.report
    out.kv("status", "pass" if rep.ok else "fail")
    if not rep.ok:
        out.table("violations", ["law", "witness"],
                  [[v.law, " ".join(map(str, v.witness))] for v in rep.violations[:20]])
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_trace(args, out):
    from .trace import run_trace

    L = _monadic(_load_algebra(args.path))
    caps = _caps(args)
    rows = run_trace(L, caps)
    failed = [r for r in rows if r.status == "fail"]
    out.kv("anchors", len(rows))
    out.kv("passed", sum(r.status == "pass" for r in rows))
    out.kv("status", "pass" if not failed else "fail")
    out.table("trace", ["anchor", "status", "detail"], [[r.anchor, r.status, r.detail] for r in rows])
    if args.plot_dir:
        from .congruence import all_congruences
        from .duality import spectrum
        _plot(args, out, "order", "plot_algebra", L)
        _plot(args, out, "congruences", "plot_congruences", all_congruences(L, caps).elements)
        _plot(args, out, "spectrum", "plot_space", spectrum(L, caps))
    return EXIT_OK if not failed else EXIT_FAIL


# --------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default="text",
                        help="structured emits tab-separated tables")
    common.add_argument("--cap-carrier", type=int, default=DEFAULT_CARRIER_CAP)
    common.add_argument("--cap-endo", type=int, default=DEFAULT_ENDO_CAP)
    common.add_argument("--cap-upsets", type=int, default=DEFAULT_UPSET_CAP)
    common.add_argument("--plot-dir", help="write Hasse diagrams (PNG) into this directory")

    p = argparse.ArgumentParser(prog="lmwb",
                                description="Workbench for finite monadic n x m-valued LM algebras")
    sub = p.add_subparsers(dest="command", required=True)
    f = sub.add_parser("fixture", parents=[common], help="emit a built-in algebra as a document")
    f.add_argument("name", choices=[s.lower() for s in FIXTURE_NAMES + AUX_NAMES] +
                   list(FIXTURE_NAMES + AUX_NAMES), metavar="NAME")
    f.add_argument("-o", "--output")
    f.set_defaults(func=cmd_fixture)
    for name, fn, hlp in (
            ("check", cmd_check, "run the axiom suites (algebra or space document)"),
            ("quantifiers", cmd_quantifiers, "enumerate every quantifier on the LM reduct"),
            ("congruences", cmd_congruences, "monadic congruences and the atom count"),
            ("spectrum", cmd_spectrum, "prime-filter space"),
            ("roundtrip", cmd_roundtrip, "duality round trip"),
            ("represent", cmd_represent, "functional representations"),
            ("trace", cmd_trace, "run every result check and tabulate pass/fail")):
        s = sub.add_parser(name, parents=[common], help=hlp)
        s.add_argument("path")
        if name == "represent":
            s.add_argument("--which", choices=("tau", "omega", "psi", "diagram"), default="tau")
        s.set_defaults(func=fn)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = Output()
    try:
        code = args.func(args, out)
    except CapExceeded as e:
        print(f"error: {e.cap_name} exceeded (size {e.size} > {e.cap})", file=sys.stderr)
        return EXIT_CAP
    except StructuralError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_STRUCTURAL
    except (Rejected, ConsistencyError) as e:
        print(f"fail: {e}", file=sys.stderr)
        return EXIT_FAIL
    if code is None:
        return EXIT_OK
    sys.stdout.write(out.render(args.format == "structured"))
    return code


if __name__ == "__main__":
    sys.exit(main())
