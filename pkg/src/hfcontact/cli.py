"""Command line: ``build``, ``contact`` and ``selftest``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import fileformat
from .errors import (
    CoincidentPosition,
    HFError,
    InvalidCurve,
    InvalidPage,
    InvalidRoute,
    NonMinimalPosition,
    NotNice,
    ParseError,
)
from .floer import all_disks, boundary_map, brute_force_disks, contact_generator
from .heegaard import build_diagram, is_nice, region_census, reverse_diagram
from .homology import contact_vanishes, verify_negative_stabilization, verify_positive_stabilization
from .openbook import Foot, StabilizationSpec, example_library, stabilize

EXIT_OK, EXIT_INTERNAL, EXIT_PARSE, EXIT_NOT_NICE = 0, 1, 2, 3
INPUT_ERRORS = (ParseError, InvalidPage, InvalidCurve, InvalidRoute, CoincidentPosition, NonMinimalPosition)


class OracleMismatch(HFError):
    pass


def load_input(source: str):
    """A path to an open book file, or the name of a library book."""
    path = Path(source)
    if path.is_file():
        return fileformat.load(path)
    if source in example_library():
        return fileformat.load_bundled(source)
    raise ParseError(f"no such file or library book: {source}")


def parse_stabilize(text: str) -> StabilizationSpec:
    """``SIGN[,SEG@P/Q,SEG@P/Q]``, e.g. ``-1`` or ``+1,d1@1/4,d1@3/4``."""
    parts = text.split(",")
    signs = {"+": 1, "+1": 1, "1": 1, "-": -1, "-1": -1}
    if parts[0] not in signs:
        raise ParseError(f"bad stabilization sign {parts[0]!r}")
    feet = []
    for item in parts[1:]:
        seg, at, pos = item.partition("@")
        if not at:
            raise ParseError(f"bad foot {item!r}, expected SEGMENT@P/Q")
        try:
            feet.append(Foot(seg, Fraction(pos)))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad foot position {pos!r}") from None
    if len(feet) not in (0, 2):
        raise ParseError("give no feet or exactly two")
    return StabilizationSpec(signs[parts[0]], tuple(feet))


# --------------------------------------------------------------------------
# reports


def _cell_text(names) -> str:
    if not names:
        return "empty"
    if len(names) == 1:
        return names[0]
    return f"{len(names)} points"


def diagram_section(d) -> dict:
    nice, bad = is_nice(d)
    alphas = sorted(d.alpha_circles)
    betas = sorted(d.beta_circles)
    table = d.cell_table()
    return {
        "genus": d.genus,
        "points": [
            {"name": p.name, "alpha": p.alpha, "beta": p.beta, "sign": p.sign, "half": p.half} for p in d.points
        ],
        "cells": [{"alpha": a, "beta": b, "points": list(table[(a, b)])} for a in alphas for b in betas],
        "regions": region_census(d),
        "region_count": d.region_count,
        "pointed_region": d.pointed_region,
        "nice": nice,
        "offenders": [{"region": r, "corners": c, "euler_characteristic": e} for r, c, e in bad],
    }


def _verdict(sec) -> str:
    if sec["nice"]:
        return "nice"
    kinds = []
    for off in sec["offenders"]:
        if off["euler_characteristic"] != 1:
            kinds.append("non-disk region")
        else:
            kinds.append({6: "hexagon", 8: "octagon"}.get(off["corners"], f"{off['corners']}-gon"))
    return "not nice: " + ", ".join(sorted(set(kinds)))


def format_build(name, sec) -> str:
    census = ", ".join(f"{k} {v}" for k, v in sec["regions"].items()) or "none"
    return "\n".join(
        [
            f"open book: {name}",
            f"genus: {sec['genus']}",
            format_table_from(sec),
            f"regions away from the basepoint: {census}",
            _verdict(sec),
        ]
    )


def contact_section(ob, oracle: bool) -> dict:
    d = reverse_diagram(build_diagram(ob))
    cx = boundary_map(d)
    rep = contact_vanishes(cx)
    disks = all_disks(d, cx.generators)
    out = {
        "diagram": diagram_section(d),
        "generators": [g.label(d) for g in cx.generators],
        "contact_generator": contact_generator(d).label(d),
        "disks": [
            {"from": x.label(d), "to": y.label(d), "arity": p.arity, "regions": list(p.support)}
            for x in cx.generators
            for y, p in disks[x]
        ],
        "boundary": ["".join(str(v) for v in row) for row in cx.matrix()],
        "homology_rank": rep.total_rank,
        "contact": {"status": rep.contact_status, "witness": [g.label(d) for g in rep.witness]},
    }
    if oracle:
        mismatches = []
        for x in cx.generators:
            for y in cx.generators:
                walk = sorted(p.key() for yy, p in disks[x] if yy == y)
                brute = sorted(p.key() for p in brute_force_disks(d, x, y))
                if walk != brute:
                    mismatches.append({"from": x.label(d), "to": y.label(d)})
        out["oracle"] = {"agree": not mismatches, "mismatches": mismatches}
    return out


def format_contact(name, rep) -> str:
    lines = [f"open book: {name} (reversed diagram)", format_table_from(rep["diagram"])]
    lines.append("generators:")
    for k, g in enumerate(rep["generators"]):
        mark = "  <- contact generator" if g == rep["contact_generator"] else ""
        lines.append(f"  {k:>3}  {g}{mark}")
    lines.append("disks:")
    for disk in rep["disks"] or []:
        lines.append(f"  {disk['from']} -> {disk['to']}  {disk['arity']}  regions {disk['regions']}")
    if not rep["disks"]:
        lines.append("  none")
    lines.append("boundary matrix (row = target, column = source):")
    lines.extend(f"  {row}" for row in rep["boundary"])
    lines.append(f"homology rank: {rep['homology_rank']}")
    wit = rep["contact"]["witness"]
    lines.append(f"contact class: {rep['contact']['status']}" + (f", witness {' + '.join(wit)}" if wit else ""))
    if "oracle" in rep:
        lines.append("oracle: " + ("agrees" if rep["oracle"]["agree"] else f"differs {rep['oracle']['mismatches']}"))
    for key, title in (("isomorphism", "positive stabilization"), ("negative", "negative stabilization")):
        if key in rep:
            lines.append(f"{title}: " + ", ".join(f"{k}={v}" for k, v in rep[key].items()))
    return "\n".join(lines)


def format_table_from(sec) -> str:
    alphas = sorted({c["alpha"] for c in sec["cells"]})
    betas = sorted({c["beta"] for c in sec["cells"]})
    table = {(c["alpha"], c["beta"]): c["points"] for c in sec["cells"]}
    rows = [[""] + [f"beta{b}" for b in betas]]
    for a in alphas:
        rows.append([f"alpha{a}"] + [_cell_text(table[(a, b)]) for b in betas])
    widths = [max(len(r[k]) for r in rows) for k in range(len(rows[0]))]
    return "\n".join("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in rows)


def _emit(doc, text, as_json):
    if as_json:
        sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text + "\n")


# --------------------------------------------------------------------------
# commands


def cmd_build(args) -> int:
    ob, specs = load_input(args.file)
    ob = fileformat.resolve(ob, specs)
    d = build_diagram(ob)
    sec = diagram_section(d)
    _emit({"name": ob.name, "diagram": sec}, format_build(ob.name or args.file, sec), args.json)
    return EXIT_OK


def cmd_contact(args) -> int:
    ob, specs = load_input(args.file)
    ob = fileformat.resolve(ob, specs)
    extra = [parse_stabilize(s) for s in args.stabilize or []]
    base = ob
    for spec in extra:
        base, ob = ob, stabilize(ob, spec)
    rep = contact_section(ob, args.oracle)
    rep["name"] = ob.name
    rep["stabilizations"] = [{"sign": s.sign, "feet": [[f.segment, str(f.pos)] for f in s.feet]} for s in extra]
    if extra:
        spec = extra[-1]
        if spec.sign > 0:
            iso = verify_positive_stabilization(base, spec)
            rep["isomorphism"] = {
                "generators": f"{iso.old_size}->{iso.new_size}",
                "bijection": len(iso.generator_map) == iso.old_size == iso.new_size,
                "commutes": iso.commutes,
                "disk_counts_match": iso.disk_counts_match,
                "maps_contact": iso.maps_contact,
            }
        else:
            neg = verify_negative_stabilization(base, spec)
            rep["negative"] = {
                "dx_equals_c": neg.x_hits_contact,
                "dy_equals_c": neg.y_hits_contact,
                "vanishes": neg.vanishes,
            }
    _emit(rep, format_contact(ob.name or args.file, rep), args.json)
    if args.oracle and not rep["oracle"]["agree"]:
        return EXIT_INTERNAL
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .checks import run_all

    failures = []
    for name in example_library():
        text = fileformat.bundled_path(name).read_text(encoding="utf-8")
        ob, specs = fileformat.loads(text)
        if fileformat.dumps(ob, specs) != text:
            failures.append(f"{name}: file does not round-trip")
        if ob != example_library()[name].book:
            failures.append(f"{name}: file differs from the library")
    for msg in failures:
        print(f"[FAIL] serialization: {msg}")
    if not failures:
        print("[PASS] serialization: every bundled file round-trips and matches the library")
    results = run_all()
    for r in results:
        print(r.line())
    bad = [r for r in results if not r.passed]
    if not bad and not failures:
        return EXIT_OK
    if any(r.error in ("NotNice", "NicenessLost") for r in bad):
        return EXIT_NOT_NICE
    return EXIT_INTERNAL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hfcontact", description="Heegaard Floer contact invariants of open books")
    sub = ap.add_subparsers(dest="command", required=True)
    b = sub.add_parser("build", help="print the Heegaard diagram statistics")
    b.add_argument("file", help="open book file or library name")
    b.add_argument("--json", action="store_true", help="machine-readable output")
    b.set_defaults(func=cmd_build)
    c = sub.add_parser("contact", help="compute the complex and the contact class")
    c.add_argument("file")
    c.add_argument("--oracle", action="store_true", help="cross-check disks by exhaustive search")
    c.add_argument("--stabilize", action="append", metavar="SIGN[,SPEC]", help="stabilize before computing")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_contact)
    s = sub.add_parser("selftest", help="run the acceptance checks on the bundled library")
    s.set_defaults(func=cmd_selftest)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except INPUT_ERRORS as err:
        print(f"error: {type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_PARSE
    except NotNice as err:
        print(f"error: {err}", file=sys.stderr)
        for r, corners, chi in err.offenders:
            print(f"  region {r}: {corners} corners, euler characteristic {chi}", file=sys.stderr)
        return EXIT_NOT_NICE
    except HFError as err:
        print(f"internal inconsistency: {type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
