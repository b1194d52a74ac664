"""Open book files: JSON with exact rational positions written as ``"p/q"``."""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources

from .errors import HFError, ParseError
from .openbook import Foot, OpenBook, StabilizationSpec, stabilize
from .surface import ArcSide, Crossing, Curve, MonodromyWord, Page, Segment, Twist

FORMAT = "hfcontact-openbook/1"


def _frac(text, where):
    if not isinstance(text, str):
        raise ParseError(f"{where}: positions are strings like \"1/2\"")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"{where}: bad rational {text!r}") from None


def _ftext(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def symbol_text(sym) -> str:
    if isinstance(sym, ArcSide):
        return f"a{sym.arc}{'+' if sym.side > 0 else '-'}"
    return sym.label


def parse_symbol(tok: str, where=""):
    if not isinstance(tok, str) or not tok:
        raise ParseError(f"{where}: boundary symbols are non-empty strings")
    if tok[0] == "a" and tok[-1] in "+-" and tok[1:-1].lstrip("-").isdigit():
        return ArcSide(int(tok[1:-1]), 1 if tok[-1] == "+" else -1)
    return Segment(tok)


def _curve_doc(c: Curve) -> list:
    return [[x.arc, _ftext(x.pos), x.direction] for x in c.crossings]


def _curve(raw, where) -> Curve:
    if not isinstance(raw, list):
        raise ParseError(f"{where}: crossings must be a list")
    out = []
    for k, item in enumerate(raw):
        w = f"{where}[{k}]"
        if not (isinstance(item, list) and len(item) == 3):
            raise ParseError(f"{w}: a crossing is [arc, \"p/q\", direction]")
        arc, pos, d = item
        if not isinstance(arc, int) or d not in (1, -1):
            raise ParseError(f"{w}: arc must be an integer and direction +1 or -1")
        out.append(Crossing(arc, _frac(pos, w), d))
    return Curve(tuple(out))


def to_document(ob: OpenBook, stabilizations=()) -> dict:
    doc = {
        "format": FORMAT,
        "name": ob.name,
        "arcs": ob.page.arc_count,
        "page": [symbol_text(s) for s in ob.page.boundary_word],
        "monodromy": [{"sign": t.sign, "crossings": _curve_doc(t.curve)} for t in ob.monodromy.twists],
    }
    if ob.basepoint_arc is not None:
        doc["basepoint_arc"] = ob.basepoint_arc
    if stabilizations:
        doc["stabilize"] = [
            {"sign": s.sign, "feet": [[f.segment, _ftext(f.pos)] for f in s.feet]} for s in stabilizations
        ]
    return doc


def dumps(ob: OpenBook, stabilizations=()) -> str:
    return json.dumps(to_document(ob, stabilizations), indent=2) + "\n"


def _spec(raw, where) -> StabilizationSpec:
    if not isinstance(raw, dict) or raw.get("sign") not in (1, -1):
        raise ParseError(f"{where}: a stabilization needs sign +1 or -1")
    feet = raw.get("feet", [])
    if not isinstance(feet, list) or len(feet) not in (0, 2):
        raise ParseError(f"{where}: feet is empty or two [segment, \"p/q\"] pairs")
    parsed = []
    for k, f in enumerate(feet):
        if not (isinstance(f, list) and len(f) == 2 and isinstance(f[0], str)):
            raise ParseError(f"{where}.feet[{k}]: a foot is [segment, \"p/q\"]")
        parsed.append(Foot(f[0], _frac(f[1], f"{where}.feet[{k}]")))
    return StabilizationSpec(raw["sign"], tuple(parsed))


def from_document(doc) -> tuple:
    """``(open book as written, stabilization directives)``."""
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    if doc.get("format", FORMAT) != FORMAT:
        raise ParseError(f"unknown format {doc.get('format')!r}")
    for key in ("page", "monodromy"):
        if key not in doc:
            raise ParseError(f"missing field {key!r}")
    if not isinstance(doc["page"], list):
        raise ParseError("page must be a list of symbols")
    page = Page(tuple(parse_symbol(t, f"page[{k}]") for k, t in enumerate(doc["page"])))
    if "arcs" in doc and doc["arcs"] != page.arc_count:
        raise ParseError(f"arcs is {doc['arcs']} but the page has {page.arc_count}")
    twists = []
    if not isinstance(doc["monodromy"], list):
        raise ParseError("monodromy must be a list")
    for k, raw in enumerate(doc["monodromy"]):
        w = f"monodromy[{k}]"
        if not isinstance(raw, dict) or raw.get("sign") not in (1, -1):
            raise ParseError(f"{w}: a twist needs sign +1 or -1")
        twists.append(Twist(_curve(raw.get("crossings"), w + ".crossings"), raw["sign"]))
    base = doc.get("basepoint_arc")
    if base is not None and not isinstance(base, int):
        raise ParseError("basepoint_arc must be an integer")
    try:
        ob = OpenBook(page, MonodromyWord(tuple(twists)), base, doc.get("name", ""))
    except HFError as err:
        raise ParseError(f"invalid open book: {err}") from None
    specs = tuple(_spec(s, f"stabilize[{k}]") for k, s in enumerate(doc.get("stabilize", [])))
    return ob, specs


def loads(text: str) -> tuple:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(err.msg, err.lineno, err.colno) from None
    return from_document(doc)


def load(path) -> tuple:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def resolve(ob: OpenBook, specs) -> OpenBook:
    for s in specs:
        ob = stabilize(ob, s)
    return ob


def bundled_path(name: str):
    return resources.files("hfcontact").joinpath("data").joinpath(f"{name}.json")


def load_bundled(name: str) -> tuple:
    """A book shipped in the package data directory."""
    return loads(bundled_path(name).read_text(encoding="utf-8"))
