"""Command-line driver: deterministic reports over the library surface.

Exit codes: 0 all certifications pass, 1 a certification failed,
2 input could not be parsed, 3 a precondition was violated.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import acceptance, affine, contragredient, lattice, liedata, vertexops, virasoro
from .cocycle import build_cocycle, verify_parity
from .errors import ParseError, PreconditionError
from .fock import monomial_basis, render, coords
from .reports import fmt_value, gamma_label, record

EXIT_OK = 0
EXIT_CERT_FAIL = 1
EXIT_PARSE = 2
EXIT_PRECONDITION = 3


def _load_lattice(path: str) -> lattice.Lattice:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError("cannot read %s: %s" % (path, exc)) from None
    return lattice.parse_lattice(text)


def _parse_vector(csv: str | None, rank: int):
    if csv is None:
        return None
    parts = csv.split(",")
    if len(parts) != rank:
        raise ParseError("vector %r needs %d comma-separated entries" % (csv, rank))
    try:
        return tuple(Fraction(p) for p in parts)
    except ValueError:
        raise ParseError("vector %r has a non-rational entry" % csv) from None


def _cmd_lattice_check(args) -> tuple[list[str], int]:
    lat = _load_lattice(args.lattice)
    lines = [record("lattice", [
        ("rank", lat.rank),
        ("det", lattice.determinant(lat)),
        ("even", lattice.is_even(lat)),
        ("self_dual", lattice.is_self_dual(lat)),
        ("scale_vector", lat.scale_vector),
    ])]
    dual = lattice.dual_basis(lat)
    for i, row in enumerate(dual):
        lines.append(record("dual_basis_row", [("i", i), ("entries", tuple(row))]))
    return lines, EXIT_OK


def _cmd_cocycle(args) -> tuple[list[str], int]:
    lat = _load_lattice(args.lattice)
    coc = build_cocycle(lat)
    ok = verify_parity(coc, lat)
    lines = [record("cocycle", [
        ("s", coc.modulus),
        ("scale", coc.scale),
        ("parity", ok),
    ])]
    for i, row in enumerate(coc.eps0_base):
        lines.append(record("eps0_row", [("i", i), ("entries", row)]))
    for i, row in enumerate(zip(*coc.dual_base)):
        lines.append(record("dual_base_vector", [("i", i), ("coords", tuple(row))]))
    return lines, EXIT_OK if ok else EXIT_CERT_FAIL


def _cmd_vl_closure(args) -> tuple[list[str], int]:
    lat = _load_lattice(args.lattice)
    if not lattice.is_even(lat):
        raise PreconditionError("lattice must be even")
    beta = _parse_vector(args.beta, lat.rank)
    records = vertexops.closure_records(lat, beta, args.cutoff, args.window)
    sector = _parse_vector(args.sector, lat.rank)
    lines = []
    all_ok = True
    for rec in records:
        if sector is not None and tuple(rec["gamma"]) != sector:
            continue
        all_ok &= rec["ok"]
        lines.append(record("bidegree", [
            ("gamma", gamma_label(rec["gamma"])),
            ("weight", rec["weight"]),
            ("dim", rec["dim"]),
            ("rank_basis", rec["rank_basis"]),
            ("rank_products", rec["rank_products"]),
            ("spans_equal", rec["spans_equal"]),
            ("membership_failures", rec["membership_failures"]),
            ("verdict", "pass" if rec["ok"] else "fail"),
        ]))
    lines.append(record("closure", [("verdict", "pass" if all_ok else "fail")]))
    return lines, EXIT_OK if all_ok else EXIT_CERT_FAIL


def _cmd_basis_table(args) -> tuple[list[str], int]:
    lat = _load_lattice(args.lattice)
    if not lattice.is_even(lat):
        raise PreconditionError("lattice must be even")
    beta = _parse_vector(args.beta, lat.rank)
    lines = []
    for gamma in vertexops.sector_vectors(lat, beta, args.cutoff, args.window):
        for w in vertexops.sector_weights(lat, gamma, args.cutoff):
            elements = vertexops.zbasis_elements(lat, gamma, w)
            lines.append(record("slice", [
                ("gamma", gamma_label(gamma)),
                ("weight", w),
                ("dim", len(elements)),
            ]))
            for k, el in enumerate(elements):
                lines.append(record("basis_element", [
                    ("gamma", gamma_label(gamma)),
                    ("weight", w),
                    ("index", k),
                    ("value", render(el)),
                ]))
    return lines, EXIT_OK


def _cmd_omega_test(args) -> tuple[list[str], int]:
    lat = _load_lattice(args.lattice)
    if not lattice.is_even(lat):
        raise PreconditionError("lattice must be even")
    rec = virasoro.omega_membership_record(lat)
    lines = [record("omega", [
        ("self_dual", lattice.is_self_dual(lat)),
        ("omega_member", rec["criterion"]),
        ("hnf_membership", rec["hnf_membership"]),
        ("routes_agree", rec["agree"]),
        ("central_charge", rec["central_charge"]),
        ("k_min", rec["k_min"]),
    ])]
    return lines, EXIT_OK if rec["agree"] else EXIT_CERT_FAIL


def _cmd_omega_extend(args) -> tuple[list[str], int]:
    lat = _load_lattice(args.lattice)
    if not lattice.is_even(lat):
        raise PreconditionError("lattice must be even")
    conf = virasoro.conformal_vector(lat)
    span = vertexops.ybasis_span(lat, None, args.cutoff, args.window)
    ext = virasoro.extend_by_k_omega(lat, span, args.k, conf, args.cutoff)
    lines = []
    all_ok = True
    for key, sl in ext.items():
        gamma, w = key
        dim = len(monomial_basis(lat, gamma, w))
        base = span.get(key)
        grew = base is None or base != sl
        ok = sl.rank == dim
        all_ok &= ok
        lines.append(record("extended_slice", [
            ("gamma", gamma_label(gamma)),
            ("weight", w),
            ("dim", dim),
            ("rank", sl.rank),
            ("enlarged", grew),
            ("verdict", "pass" if ok else "fail"),
        ]))
    target = [args.k * x for x in coords(lat, conf.omega, lat.zero(), 2)]
    member = ext.get((lat.zero(), Fraction(2))).contains(target)
    lines.append(record("extension", [
        ("k", args.k),
        ("k_omega_member", member),
        ("verdict", "pass" if (all_ok and member) else "fail"),
    ]))
    return lines, EXIT_OK if (all_ok and member) else EXIT_CERT_FAIL


def _load_lie(spec: str) -> liedata.LieData:
    if spec in liedata.BUILTIN:
        return liedata.BUILTIN[spec]()
    try:
        text = Path(spec).read_text()
    except OSError as exc:
        raise ParseError("cannot read %s: %s" % (spec, exc)) from None
    return liedata.parse_liedata(text)


def _cmd_affine_build(args) -> tuple[list[str], int]:
    lie = _load_lie(args.lie)
    ctx = affine.vacuum_context(lie, args.level)
    spans = affine.garland_span(ctx, args.cutoff)
    pbw = affine.pbw_span(ctx, args.cutoff)
    lines = []
    all_ok = True
    for w in range(args.cutoff + 1):
        contains_pbw = all(spans[w].contains(row) for row in pbw[w].fraction_rows())
        all_ok &= contains_pbw
        lines.append(record("affine_slice", [
            ("weight", w),
            ("dim", len(affine.verma_basis(lie, 1, w))),
            ("garland_rank", spans[w].rank),
            ("pbw_rank", pbw[w].rank),
            ("garland_contains_pbw", contains_pbw),
        ]))
    if args.quotient:
        quo = affine.quotient_data(ctx, args.cutoff)
        for w in range(args.cutoff + 1):
            image = quo[w].image_span([r for r in spans[w].fraction_rows()])
            lines.append(record("quotient_slice", [
                ("weight", w),
                ("dim", quo[w].quotient_dim),
                ("garland_image_rank", image.rank),
            ]))
    lines.append(record("affine", [("verdict", "pass" if all_ok else "fail")]))
    return lines, EXIT_OK if all_ok else EXIT_CERT_FAIL


def _cmd_contra_check(args) -> tuple[list[str], int]:
    lat = _load_lattice(args.lattice)
    if not lattice.is_even(lat):
        raise PreconditionError("lattice must be even")
    coc = build_cocycle(lat)
    span = vertexops.ybasis_span(lat, None, args.cutoff, args.window)
    recs = contragredient.certify_self_pairing(lat, coc, span)
    lines = [record("contra_config", [("pairing_convention", "opposite_sector_blocks"),
                                      ("vacuum_pairing", 1)])]
    all_ok = True
    for rec in recs:
        gamma, w = rec["key"]
        all_ok &= rec["ok"]
        fields = [("gamma", gamma_label(gamma)), ("weight", w),
                  ("verdict", "pass" if rec["ok"] else "fail")]
        if rec.get("witness"):
            fields.append(("witness_value", rec["witness"]["value"]))
        lines.append(record("pairing_block", fields))
    lines.append(record("contra", [("verdict", "pass" if all_ok else "fail")]))
    return lines, EXIT_OK if all_ok else EXIT_CERT_FAIL


def _cmd_acceptance(_args) -> tuple[list[str], int]:
    results = acceptance.run_all()
    lines = [r.line() for r in results]
    ok = all(r.passed for r in results)
    lines.append("SUITE %s (%d/%d)" % ("PASS" if ok else "FAIL",
                                       sum(r.passed for r in results), len(results)))
    return lines, EXIT_OK if ok else EXIT_CERT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="zvertex",
        description="Exact integral-form certification for lattice and affine vertex algebras")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, **flags):
        sp = sub.add_parser(name)
        for flag, kw in flags.items():
            sp.add_argument("--" + flag.replace("_", "-"), **kw)
        sp.add_argument("--out", help="also write the report to this path")
        sp.set_defaults(handler=fn)
        return sp

    add("lattice-check", _cmd_lattice_check, lattice={"required": True})
    add("cocycle", _cmd_cocycle, lattice={"required": True})
    add("vl-closure", _cmd_vl_closure, lattice={"required": True},
        cutoff={"required": True, "type": int}, window={"type": int},
        sector={"help": "restrict to one group degree (comma-separated coords)"},
        beta={"help": "module coset representative (comma-separated coords)"})
    add("basis-table", _cmd_basis_table, lattice={"required": True},
        cutoff={"required": True, "type": int}, window={"type": int},
        beta={"help": "module coset representative"})
    add("omega-test", _cmd_omega_test, lattice={"required": True})
    add("omega-extend", _cmd_omega_extend, lattice={"required": True},
        k={"required": True, "type": int}, cutoff={"required": True, "type": int},
        window={"type": int})
    add("affine-build", _cmd_affine_build, lie={"required": True},
        level={"required": True, "type": int}, cutoff={"required": True, "type": int},
        quotient={"action": "store_true"})
    add("contra-check", _cmd_contra_check, lattice={"required": True},
        cutoff={"required": True, "type": int}, window={"type": int})
    add("acceptance", _cmd_acceptance)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        lines, code = args.handler(args)
    except ParseError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_PARSE
    except PreconditionError as exc:
        print("precondition failed: %s" % exc, file=sys.stderr)
        return EXIT_PRECONDITION
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
