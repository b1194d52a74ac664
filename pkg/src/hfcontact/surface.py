"""Pages cut into a polygon, curves drawn as chord systems, Dehn twists.

A page is a compact oriented surface with boundary together with a basis of
disjoint arcs cutting it into one polygon.  The polygon boundary is a cyclic
word of arc sides and boundary segments, read counterclockwise.  Every point
on a side carries a parameter ``t`` in (0, 1) increasing counterclockwise.

Each basis arc ``a`` has an intrinsic parameter ``s`` in (0, 1).  Its plus
side is traversed counterclockwise with ``s`` increasing (the polygon lies on
the left of ``a``), its minus side with ``s`` decreasing, so the point
``a(s)`` sits at ``t = s`` on the plus side and ``t = 1 - s`` on the minus
side.

A curve is stored by the basis arcs it crosses.  ``Crossing.direction`` is the
intersection sign of ``(a, curve)``: ``+1`` means the curve passes from the
right of ``a`` (the minus side) to its left (the plus side).  Between two
consecutive crossings the curve is a chord of the polygon, so all planar
questions reduce to cyclic order comparisons on the boundary circle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import CoincidentPosition, InvalidCurve, InvalidPage, NotClosed

HALF = Fraction(1, 2)


@dataclass(frozen=True, order=True)
class ArcSide:
    arc: int
    side: int  # +1 or -1

    def __str__(self):
        return f"a{self.arc}{'+' if self.side > 0 else '-'}"


@dataclass(frozen=True, order=True)
class Segment:
    label: str

    def __str__(self):
        return self.label


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple
    genus: int | None
    boundary_components: int | None
    euler_characteristic: int

    @property
    def valid(self):
        return not self.violations


@dataclass(frozen=True)
class Page:
    boundary_word: tuple

    def __post_init__(self):
        object.__setattr__(self, "boundary_word", tuple(self.boundary_word))

    @cached_property
    def arc_indices(self) -> tuple:
        return tuple(sorted({s.arc for s in self.boundary_word if isinstance(s, ArcSide)}))

    @property
    def arc_count(self) -> int:
        return len(self.arc_indices)

    @cached_property
    def _index(self) -> dict:
        out = {}
        for i, sym in enumerate(self.boundary_word):
            key = (sym.arc, sym.side) if isinstance(sym, ArcSide) else sym.label
            out.setdefault(key, i)
        return out

    def side_index(self, arc: int, side: int) -> int:
        return self._index[(arc, side)]

    def segment_index(self, label: str) -> int:
        return self._index[label]

    @property
    def segments(self) -> tuple:
        return tuple(s.label for s in self.boundary_word if isinstance(s, Segment))

    def segment_after(self, arc: int, side: int) -> str:
        """Label of the boundary segment that follows an arc side."""
        word = self.boundary_word
        nxt = word[(self.side_index(arc, side) + 1) % len(word)]
        if not isinstance(nxt, Segment):
            raise InvalidPage(f"{ArcSide(arc, side)} is not followed by a boundary segment")
        return nxt.label

    def validate(self):
        report = validate_page(self)
        if not report.valid:
            raise InvalidPage("; ".join(report.violations))
        return self

    @property
    def euler_characteristic(self) -> int:
        return 1 - self.arc_count

    def __str__(self):
        return " ".join(str(s) for s in self.boundary_word)


def _boundary_cycles(page: Page) -> list:
    """Group boundary segments into the boundary circles of the reglued page.

    Leaving a segment we reach the start vertex of an arc side; that vertex is
    glued to the end vertex of the opposite side, whose successor segment is
    the continuation of the same boundary circle.
    """
    word = page.boundary_word
    n = len(word)
    succ = {}
    for i, sym in enumerate(word):
        if not isinstance(sym, Segment):
            continue
        nxt = word[(i + 1) % n]
        if isinstance(nxt, Segment):
            succ[i] = (i + 1) % n
            continue
        j = page.side_index(nxt.arc, -nxt.side)
        succ[i] = (j + 1) % n
    seen, cycles = set(), []
    for start in succ:
        if start in seen:
            continue
        cyc, cur = [], start
        while cur not in seen:
            seen.add(cur)
            cyc.append(word[cur].label)
            cur = succ.get(cur)
            if cur is None or not isinstance(word[cur], Segment):
                break
        cycles.append(cyc)
    return cycles


def validate_page(p: Page) -> ValidationReport:
    violations = []
    word = p.boundary_word
    sides, labels = {}, {}
    for sym in word:
        if isinstance(sym, ArcSide):
            if sym.side not in (1, -1):
                violations.append(f"bad side marker on arc {sym.arc}")
            key = (sym.arc, sym.side)
            if key in sides:
                violations.append(f"arc side repeated: {sym}")
            sides[key] = sides.get(key, 0) + 1
        elif isinstance(sym, Segment):
            if sym.label in labels:
                violations.append(f"segment label repeated: {sym.label}")
            labels[sym.label] = 1
        else:
            violations.append(f"unknown symbol {sym!r}")
    for arc in {a for a, _ in sides}:
        for side in (1, -1):
            if (arc, side) not in sides:
                violations.append(f"arc side missing: {ArcSide(arc, side)}")
    if not labels:
        violations.append("no boundary segment")
    if not sides:
        violations.append("no basis arc")
    for i, sym in enumerate(word):
        nxt = word[(i + 1) % len(word)]
        if isinstance(sym, ArcSide) and isinstance(nxt, ArcSide):
            violations.append(f"adjacent arc sides {sym} {nxt}")
        if isinstance(sym, Segment) and isinstance(nxt, Segment) and len(word) > 1:
            violations.append(f"adjacent boundary segments {sym} {nxt}")
    n_arcs = len({a for a, _ in sides})
    # one polygon face, n arc edges plus one edge per segment, a vertex per arc end
    chi = 2 * n_arcs - (n_arcs + len(labels)) + 1
    if violations:
        return ValidationReport(tuple(violations), None, None, chi)
    b = len(_boundary_cycles(p))
    twice_genus = 2 - chi - b
    if twice_genus < 0 or twice_genus % 2:
        violations.append("reglued surface has inconsistent Euler characteristic")
        return ValidationReport(tuple(violations), None, b, chi)
    if chi != 1 - n_arcs:
        violations.append("Euler characteristic differs from 1 - n")
    return ValidationReport(tuple(violations), twice_genus // 2, b, chi)


# --------------------------------------------------------------------------
# curves


@dataclass(frozen=True, order=True)
class Crossing:
    arc: int
    pos: Fraction
    direction: int


@dataclass(frozen=True, order=True)
class Endpoint:
    segment: str
    pos: Fraction


@dataclass(frozen=True)
class Curve:
    """A closed curve (no endpoints) or a properly embedded arc.

    ``crossings`` is cyclic for closed curves.  Exit and entry sides of
    consecutive crossings are consistent by construction: a crossing leaves
    through one side of its arc and re-enters through the other.
    """

    crossings: tuple
    start: Endpoint | None = None
    end: Endpoint | None = None

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(self.crossings))
        if (self.start is None) != (self.end is None):
            raise InvalidCurve("an arc needs both endpoints")

    @property
    def closed(self) -> bool:
        return self.start is None

    def count(self, arc: int) -> int:
        return sum(1 for c in self.crossings if c.arc == arc)

    def word(self) -> tuple:
        """Crossing word without positions."""
        return tuple((c.arc, c.direction) for c in self.crossings)


@dataclass(frozen=True)
class Twist:
    curve: Curve
    sign: int


@dataclass(frozen=True)
class MonodromyWord:
    """``twists[0]`` is applied last: ``(t_k, ..., t_1)`` means ``t_k o ... o t_1``."""

    twists: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "twists", tuple(self.twists))

    def __len__(self):
        return len(self.twists)

    def then(self, curve: Curve, sign: int) -> "MonodromyWord":
        """Compose with one more twist applied after the current word."""
        return MonodromyWord((Twist(curve, sign),) + self.twists)


@dataclass(frozen=True)
class IntersectionPoint:
    sign: int
    first: int  # chord (or crossing) index on the first curve
    second: int


def _exit(page: Page, c: Crossing):
    if c.direction > 0:
        return (page.side_index(c.arc, -1), 1 - c.pos)
    return (page.side_index(c.arc, 1), c.pos)


def _enter(page: Page, c: Crossing):
    if c.direction > 0:
        return (page.side_index(c.arc, 1), c.pos)
    return (page.side_index(c.arc, -1), 1 - c.pos)


def _endpoint_loc(page: Page, e: Endpoint):
    return (page.segment_index(e.segment), e.pos)


def chords(page: Page, curve: Curve) -> list:
    """Chords of the polygon traced by the curve, each as ``(from, to)``.

    For a closed curve chord ``j`` runs from crossing ``j - 1`` to crossing
    ``j``; for an arc chord ``j`` runs from crossing ``j - 1`` (or the start)
    to crossing ``j`` (or the end).
    """
    cr = curve.crossings
    k = len(cr)
    if curve.closed:
        return [(_enter(page, cr[j - 1]), _exit(page, cr[j])) for j in range(k)]
    locs = [_endpoint_loc(page, curve.start)]
    for c in cr:
        locs.append(_exit(page, c))
        locs.append(_enter(page, c))
    locs.append(_endpoint_loc(page, curve.end))
    return [(locs[2 * j], locs[2 * j + 1]) for j in range(k + 1)]


def in_open_arc(x, a, b) -> bool:
    """Is ``x`` strictly inside the counterclockwise boundary arc from ``a`` to ``b``."""
    if a < b:
        return a < x < b
    return x > a or x < b


def chords_cross(p, q) -> bool:
    (a, b), (c, d) = p, q
    if len({a, b, c, d}) < 4:
        raise CoincidentPosition(f"chords share an endpoint: {p} {q}")
    return in_open_arc(c, a, b) != in_open_arc(d, a, b)


def curve_violations(page: Page, curve: Curve) -> list:
    out = []
    arcs = set(page.arc_indices)
    seen = set()
    for c in curve.crossings:
        if c.arc not in arcs:
            out.append(f"crossing on unknown arc {c.arc}")
            return out
        if not 0 < c.pos < 1:
            out.append(f"position {c.pos} outside (0, 1)")
        if c.direction not in (1, -1):
            out.append("crossing direction must be +1 or -1")
        if (c.arc, c.pos) in seen:
            out.append(f"position {c.pos} repeated on arc {c.arc}")
        seen.add((c.arc, c.pos))
    if not curve.closed:
        for e in (curve.start, curve.end):
            if e.segment not in page.segments:
                out.append(f"unknown segment {e.segment}")
            elif not 0 < e.pos < 1:
                out.append(f"endpoint position {e.pos} outside (0, 1)")
        if curve.start == curve.end:
            out.append("arc endpoints coincide")
    if out:
        return out
    chs = chords(page, curve)
    for (i, p), (j, q) in combinations(enumerate(chs), 2):
        if len({*p, *q}) < 4:
            out.append(f"chords {i} and {j} share an endpoint")
        elif chords_cross(p, q):
            out.append(f"chords {i} and {j} interleave")
    return out


def is_embedded(page: Page, curve: Curve) -> bool:
    return not curve_violations(page, curve)


def family_violations(page: Page, curves: Sequence[Curve]) -> list:
    out = []
    for i, c in enumerate(curves):
        out.extend(f"curve {i}: {v}" for v in curve_violations(page, c))
    if out:
        return out
    for (i, c1), (j, c2) in combinations(enumerate(curves), 2):
        try:
            if curve_intersections(c1, c2, page):
                out.append(f"curves {i} and {j} intersect")
        except CoincidentPosition as exc:
            out.append(f"curves {i} and {j}: {exc}")
    return out


def curve_intersections(c1, c2, p: Page) -> list:
    """Transverse intersections, each signed by the orientation of ``(c1, c2)``.

    Either argument may be a basis arc index.  Two curves meet only inside the
    polygon, where chords cross exactly when their endpoints interleave.
    """
    if isinstance(c1, int) and isinstance(c2, int):
        return []
    if isinstance(c1, int) or isinstance(c2, int):
        arc, curve, flip = (c1, c2, 1) if isinstance(c1, int) else (c2, c1, -1)
        return [
            IntersectionPoint(flip * cr.direction, *((0, k) if flip > 0 else (k, 0)))
            for k, cr in enumerate(curve.crossings)
            if cr.arc == arc
        ]
    pos1 = {(c.arc, c.pos) for c in c1.crossings}
    for c in c2.crossings:
        if (c.arc, c.pos) in pos1:
            raise CoincidentPosition(f"arc {c.arc} position {c.pos} used by both curves")
    out = []
    for i, (a, b) in enumerate(chords(p, c1)):
        for j, (c, d) in enumerate(chords(p, c2)):
            if chords_cross((a, b), (c, d)):
                # c2 arriving from the right of c1 is a positive crossing
                out.append(IntersectionPoint(1 if in_open_arc(c, a, b) else -1, i, j))
    return out


def pushoff_basis_arc(p: Page, i: int) -> Curve:
    """The arc ``b_i``: ``a_i`` with both ends slid forward along the boundary.

    It runs from the segment after ``a_i-`` to the segment after ``a_i+`` and
    meets ``a_i`` once, positively, at ``s = 1/2``.
    """
    return Curve(
        (Crossing(i, HALF, 1),),
        Endpoint(p.segment_after(i, -1), HALF),
        Endpoint(p.segment_after(i, 1), HALF),
    )


# --------------------------------------------------------------------------
# positions


def _positions_by_arc(curves: Iterable[Curve]) -> dict:
    out = {}
    for c in curves:
        for cr in c.crossings:
            out.setdefault(cr.arc, []).append(cr.pos)
    return out


def _min_gap(values) -> Fraction:
    vals = sorted({Fraction(0), Fraction(1), *values})
    return min(b - a for a, b in zip(vals, vals[1:]))


def renormalize(curves: Sequence[Curve]) -> tuple:
    """Replace positions by evenly spaced ranks, arc by arc, across the family."""
    ranks = {}
    for arc, vals in _positions_by_arc(curves).items():
        vals = sorted(vals)
        m = len(vals)
        ranks.update({(arc, v): Fraction(k + 1, m + 1) for k, v in enumerate(vals)})
    return tuple(
        Curve(
            tuple(Crossing(c.arc, ranks[(c.arc, c.pos)], c.direction) for c in curve.crossings),
            curve.start,
            curve.end,
        )
        for curve in curves
    )


# --------------------------------------------------------------------------
# bigon removal


def _find_bigon(page: Page, curves: Sequence[Curve], targets):
    """Innermost chord with both ends on one side of a target arc, or None."""
    word = page.boundary_word
    ends = {}
    cands = []
    for ci, curve in enumerate(curves):
        for j, (a, b) in enumerate(chords(page, curve)):
            ends.setdefault(a[0], []).append(a[1])
            ends.setdefault(b[0], []).append(b[1])
            if a[0] != b[0]:
                continue
            sym = word[a[0]]
            if isinstance(sym, ArcSide) and sym.arc in targets:
                lo, hi = sorted((a[1], b[1]))
                cands.append((a[0], lo, hi, ci, j))
    for side, lo, hi, ci, j in sorted(cands):
        if not any(lo < t < hi for t in ends[side]):
            return ci, j
    return None


def _remove_bigon(curve: Curve, j: int) -> Curve:
    cr = list(curve.crossings)
    k = len(cr)
    drop = {(j - 1) % k, j % k} if curve.closed else {j - 1, j}
    return Curve(tuple(c for i, c in enumerate(cr) if i not in drop), curve.start, curve.end)


def reduce_family(curves: Sequence[Curve], p: Page, targets=None):
    """Remove innermost bigons against basis arcs until none is left.

    Returns ``(curves, moves)``.  Each move deletes two intersections with one
    target arc, so the loop terminates.
    """
    targets = set(p.arc_indices if targets is None else targets)
    curves = tuple(curves)
    moves = 0
    while True:
        hit = _find_bigon(p, curves, targets)
        if hit is None:
            return curves, moves
        ci, j = hit
        curves = curves[:ci] + (_remove_bigon(curves[ci], j),) + curves[ci + 1:]
        moves += 1


def reduce_to_minimal_position(c: Curve, targets, p: Page) -> Curve:
    return reduce_family((c,), p, targets)[0][0]


def has_bigon(p: Page, curves: Sequence[Curve], targets=None) -> bool:
    targets = set(p.arc_indices if targets is None else targets)
    return _find_bigon(p, tuple(curves), targets) is not None


# --------------------------------------------------------------------------
# Dehn twists

# A positive twist is right-handed with respect to the page orientation: a
# curve crossing the core turns right and runs once around it.
POSITIVE_TWIST_HANDEDNESS = 1


def _avoid(gamma: Curve, curves: Sequence[Curve]) -> Curve:
    """Slide the crossings of ``gamma`` off positions used by ``curves``."""
    fam = _positions_by_arc(curves)
    used = {(a, v) for a, vals in fam.items() for v in vals}
    if not any((c.arc, c.pos) in used for c in gamma.crossings):
        return gamma
    allpos = [v for vals in fam.values() for v in vals] + [c.pos for c in gamma.crossings]
    eps = _min_gap(allpos) / 3
    return Curve(
        tuple(
            Crossing(c.arc, c.pos + eps if (c.arc, c.pos) in used else c.pos, c.direction)
            for c in gamma.crossings
        )
    )


def twist_family(curves: Sequence[Curve], gamma: Curve, sign: int, p: Page) -> tuple:
    """Apply the Dehn twist about ``gamma`` to a family of disjoint curves.

    Inside a thin annulus around ``gamma`` every transverse passage of a curve
    is replaced by a spiral that runs once around ``gamma``; the spiral meets
    the basis arc at each crossing of ``gamma`` inside a small window around
    that crossing, ordered by how far along the spiral it is.  The output is
    reduced to minimal position against the basis and renormalized.
    """
    if not gamma.closed:
        raise NotClosed("twist curve must be closed")
    bad = curve_violations(p, gamma)
    if bad:
        raise InvalidCurve("twist curve not embedded: " + "; ".join(bad))
    curves = tuple(curves)
    if not gamma.crossings:
        return curves
    tau = sign * POSITIVE_TWIST_HANDEDNESS
    gamma = _avoid(gamma, curves)
    fam = [chords(p, c) for c in curves]
    gch = chords(p, gamma)
    gcr = gamma.crossings
    m = len(gcr)

    locs = sorted({x for chs in fam + [gch] for ch in chs for x in ch})
    rank = {x: i for i, x in enumerate(locs)}
    nloc = len(locs)

    def offset(a, x):
        return (rank[x] - rank[a]) % nloc

    hits = []  # (curve, chord, gamma chord)
    for ci, chs in enumerate(fam):
        for cj, ch in enumerate(chs):
            for gj, gc in enumerate(gch):
                if chords_cross(ch, gc):
                    hits.append((ci, cj, gj))

    # angular order of hits and crossings along gamma
    theta, gtheta = {}, [0] * m
    t = 0
    for gj, (c, d) in enumerate(gch):
        on = [h for h in hits if h[2] == gj]

        def along_gamma(h, c=c, d=d):
            a, b = fam[h[0]][h[1]]
            return offset(c, a if in_open_arc(a, c, d) else b)

        for h in sorted(on, key=along_gamma):
            theta[h] = t
            t += 1
        gtheta[gj] = t
        t += 1
    period = t

    allpos = [v for vals in _positions_by_arc(curves + (gamma,)).values() for v in vals]
    delta = _min_gap(allpos) / 3

    def spiral(h):
        a, b = fam[h[0]][h[1]]
        c, d = gch[h[2]]
        right_to_left = in_open_arc(a, c, d)
        omega = tau if right_to_left else -tau
        th = theta[h]
        if omega > 0:
            ks = sorted(range(m), key=lambda k: (gtheta[k] - th) % period)
        else:
            ks = sorted(range(m), key=lambda k: (th - gtheta[k]) % period)
        out = []
        for k in ks:
            g = gcr[k]
            u = Fraction(((gtheta[k] - th) * tau) % period, period)
            out.append(Crossing(g.arc, g.pos - g.direction * delta * (2 * u - 1), omega * g.direction))
        return out

    new = []
    for ci, curve in enumerate(curves):
        cr = curve.crossings
        k = len(cr)
        pieces = []
        for cj, (a, b) in enumerate(fam[ci]):
            on = [h for h in hits if h[0] == ci and h[1] == cj]

            def along_chord(h, a=a, b=b):
                c, d = gch[h[2]]
                return offset(a, c if in_open_arc(c, a, b) else d)

            for h in sorted(on, key=along_chord):
                pieces.extend(spiral(h))
            if cj < k:
                pieces.append(cr[cj])
        new.append(Curve(tuple(pieces), curve.start, curve.end))
    out, _ = reduce_family(new, p)
    out = renormalize(out)
    bad = family_violations(p, out)
    if bad:
        raise InvalidCurve("twist produced a non-embedded family: " + "; ".join(bad))
    return out


def apply_dehn_twist(c: Curve, gamma: Curve, sign: int, p: Page) -> Curve:
    return twist_family((c,), gamma, sign, p)[0]


def apply_monodromy_family(curves: Sequence[Curve], w: MonodromyWord, p: Page) -> tuple:
    out, _ = reduce_family(tuple(curves), p)
    out = renormalize(out)
    for tw in reversed(w.twists):
        out = twist_family(out, tw.curve, tw.sign, p)
    return out


def apply_monodromy(c: Curve, w: MonodromyWord, p: Page) -> Curve:
    return apply_monodromy_family((c,), w, p)[0]
