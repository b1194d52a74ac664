"""Open books, positive and negative stabilization."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InvalidPage, InvalidRoute
from .surface import (
    ArcSide,
    Crossing,
    Curve,
    MonodromyWord,
    Page,
    Segment,
    Twist,
    curve_violations,
    validate_page,
)


@dataclass(frozen=True)
class OpenBook:
    page: Page
    monodromy: MonodromyWord = field(default_factory=MonodromyWord)
    basepoint_arc: int | None = None
    name: str = ""

    def __post_init__(self):
        report = validate_page(self.page)
        if not report.valid:
            raise InvalidPage("; ".join(report.violations))
        for tw in self.monodromy.twists:
            if not tw.curve.closed:
                raise InvalidPage("monodromy twist curves must be closed")
            bad = curve_violations(self.page, tw.curve)
            if bad:
                raise InvalidPage("twist curve not embedded: " + "; ".join(bad))

    @property
    def basis(self) -> tuple:
        return self.page.arc_indices

    @property
    def base_arc(self) -> int:
        if self.basepoint_arc is not None:
            return self.basepoint_arc
        return 1 if 1 in self.basis else self.basis[0]


@dataclass(frozen=True)
class Foot:
    segment: str
    pos: Fraction


@dataclass(frozen=True)
class StabilizationSpec:
    """Where the new 1-handle is attached.

    The curve ``gamma`` is the chord joining the two feet inside the old
    polygon (disjoint from every old basis arc) closed up over the handle.  A
    chord between two given boundary points of a disk is unique up to
    isotopy, so the feet determine the route.
    """

    sign: int
    feet: tuple = ()  # two Foot values, empty for the standard choice

    def resolve(self, page: Page) -> tuple:
        if self.feet:
            return tuple(self.feet)
        seg = page.segment_after(page.arc_indices[0], 1)
        return (Foot(seg, Fraction(5, 8)), Foot(seg, Fraction(7, 8)))


def stabilize(ob: OpenBook, spec: StabilizationSpec) -> OpenBook:
    """Attach a 1-handle to the page and compose with a twist over it.

    The new arc is the cocore of the handle; its index is one less than the
    smallest existing index (so the first stabilization adds ``a0``).  The
    twist is applied after the old monodromy.
    """
    if spec.sign not in (1, -1):
        raise InvalidRoute("stabilization sign must be +1 or -1")
    page = ob.page
    feet = spec.resolve(page)
    if len(feet) != 2 or feet[0] == feet[1]:
        raise InvalidRoute("two distinct feet are required")
    labels = page.segments
    for f in feet:
        if f.segment not in labels:
            raise InvalidRoute(f"foot on unknown segment {f.segment}")
        if not 0 < f.pos < 1:
            raise InvalidRoute("foot position outside (0, 1)")
    new = min(page.arc_indices) - 1
    word = []
    for sym in page.boundary_word:
        if isinstance(sym, Segment):
            here = sorted(
                (f.pos, 1 if k == 0 else -1) for k, f in enumerate(feet) if f.segment == sym.label
            )
            if here:
                for k, (_, side) in enumerate(here):
                    word.append(Segment(f"{sym.label}.{k}"))
                    word.append(ArcSide(new, side))
                word.append(Segment(f"{sym.label}.{len(here)}"))
                continue
        word.append(sym)
    new_page = Page(tuple(word))
    report = validate_page(new_page)
    if not report.valid:
        raise InvalidRoute("stabilized page invalid: " + "; ".join(report.violations))
    # the route chord runs from the foot carrying the minus side to the one
    # carrying the plus side; over the handle it crosses the cocore once
    gamma = Curve((Crossing(new, Fraction(1, 4), 1),))
    bad = curve_violations(new_page, gamma)
    if bad:
        raise InvalidRoute("; ".join(bad))
    twists = tuple(Twist(tw.curve, tw.sign) for tw in ob.monodromy.twists)
    mono = MonodromyWord(twists).then(gamma, spec.sign)
    suffix = "+" if spec.sign > 0 else "-"
    return OpenBook(new_page, mono, ob.base_arc, f"{ob.name}{suffix}stab" if ob.name else "")


def stabilization_curve(ob: OpenBook) -> Curve:
    """The curve of the last-applied twist, i.e. the stabilization curve."""
    return ob.monodromy.twists[0].curve


# --------------------------------------------------------------------------
# example library


@dataclass(frozen=True)
class LibraryEntry:
    name: str
    book: OpenBook
    expected: dict  # statistics of the diagram built from the book
    note: str = ""


def _page(text: str) -> Page:
    out = []
    for tok in text.split():
        if tok[0] == "a" and tok[-1] in "+-":
            out.append(ArcSide(int(tok[1:-1]), 1 if tok[-1] == "+" else -1))
        else:
            out.append(Segment(tok))
    return Page(tuple(out))


def _loop(*crossings) -> Curve:
    return Curve(tuple(Crossing(a, Fraction(p), d) for a, p, d in crossings))


ANNULUS = "a1+ d1 a1- d2"
# four-holed sphere; the two monodromy curves each enclose two holes and
# share one of them
S5_GOOD_PAGE = "a1+ s1 a2+ s2 a2- s3 a1- s4 a3- s5 a3+ s6"
S5_GOOD_CURVES = (
    _loop((2, "1/2", 1), (3, "1/2", -1)),
    _loop((1, "1/2", -1)),
)
# the same book after one arc slide; the diagram has two hexagons
S5_PLA_PAGE = "a1+ s1 a1- s2 a3+ s3 a3- s4 a2- s5 a2+ s6"
S5_PLA_CURVES = (
    _loop((2, "1/2", 1), (1, "1/2", -1)),
    _loop((2, "1/2", 1), (3, "1/2", -1)),
)


def _annulus(name, sign):
    page = _page(ANNULUS)
    mono = MonodromyWord() if sign == 0 else MonodromyWord((Twist(_loop((1, "1/4", 1)), sign),))
    return OpenBook(page, mono, name=name)


def example_library() -> dict:
    """Named open books with the statistics their diagrams are expected to have.

    Statistics refer to the diagram of the book itself; ``homology`` and
    ``contact`` refer to the reversed diagram.  ``cells`` counts points on
    each ``(alpha, beta)`` pair.
    """
    g1, g2 = S5_GOOD_CURVES
    p1, p2 = S5_PLA_CURVES
    entries = [
        LibraryEntry(
            "annulus-id",
            _annulus("annulus-id", 0),
            {"genus": 1, "cells": {(1, 1): 2}, "nice": True, "regions": {"bigon": 2}, "generators": 2, "homology": 2, "contact": "nonvanishing"},
            "S1 x S2 with its tight structure",
        ),
        LibraryEntry(
            "annulus-pos-twist",
            _annulus("annulus-pos-twist", 1),
            {"genus": 1, "cells": {(1, 1): 1}, "nice": True, "regions": {}, "generators": 1, "homology": 1, "contact": "nonvanishing"},
            "the tight three-sphere",
        ),
        LibraryEntry(
            "annulus-neg-twist",
            _annulus("annulus-neg-twist", -1),
            {"genus": 1, "cells": {(1, 1): 3}, "nice": True, "regions": {"bigon": 2}, "generators": 3, "homology": 1, "contact": "vanishing"},
            "an overtwisted three-sphere",
        ),
        LibraryEntry(
            "s5-good-basis",
            OpenBook(_page(S5_GOOD_PAGE), MonodromyWord((Twist(g2, 1), Twist(g1, 1))), name="s5-good-basis"),
            {
                "genus": 3,
                "cells": {(1, 1): 1, (1, 2): 2, (1, 3): 2, (2, 1): 0, (2, 2): 1, (2, 3): 1, (3, 1): 0, (3, 2): 1, (3, 3): 1},
                "nice": True,
                "regions": {"square": 4},
                "generators": 2,
                "squares": 2,
                "homology": 2,
                "contact": "nonvanishing",
            },
            "tight S1 x S2 on a four-holed sphere page, basis with a small diagram",
        ),
        LibraryEntry(
            "s5-pla-basis",
            OpenBook(_page(S5_PLA_PAGE), MonodromyWord((Twist(p2, 1), Twist(p1, 1))), name="s5-pla-basis"),
            {
                "genus": 3,
                "cells": {(1, 1): 1, (1, 2): 1, (1, 3): 0, (2, 1): 1, (2, 2): 2, (2, 3): 1, (3, 1): 2, (3, 2): 1, (3, 3): 1},
                "nice": False,
                "regions": {"hexagon": 2, "square": 3},
            },
            "the same book with a basis whose diagram is not nice",
        ),
    ]
    return {e.name: e for e in entries}


def library_book(name: str) -> OpenBook:
    return example_library()[name].book
