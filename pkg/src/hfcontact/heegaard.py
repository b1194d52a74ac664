"""Pointed Heegaard diagrams of open books, regions, domains and measures.

The Heegaard surface is two copies of the cut polygon, the page at time 1/2
and the mirrored page at time 0, glued along the boundary segments.  The top
copy carries the pushoffs ``b_i``, the bottom copy carries ``h(b_i)``.  Faces
of each copy (cut by its chords) are glued across seam intervals to give the
regions.

Orientation conventions, all with respect to the Heegaard surface:

* ``alpha_i`` runs along ``a_i`` with ``s`` increasing on top and decreasing
  on the bottom; the face on the plus side of ``a_i`` is on its left.
* ``beta_i`` runs along ``b_i`` on top and backwards along ``h(b_i)`` on the
  bottom.
* A point has sign ``+1`` when ``beta`` crosses ``alpha`` from right to left.
* A quadrant at a point is named ``(ea, eb)``: the forward (``+1``) or
  backward (``-1``) alpha half-edge and beta half-edge bounding it.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import cached_property

from .errors import InconsistentDiagram, NonDiskRegion, NonMinimalPosition, NotADomain
from .surface import (
    ArcSide,
    Page,
    Segment,
    apply_monodromy_family,
    chords,
    has_bigon,
    pushoff_basis_arc,
)

QUADRANTS = ((1, 1), (1, -1), (-1, 1), (-1, -1))
TOP, BOTTOM = "top", "bottom"


@dataclass(frozen=True)
class Point:
    id: int
    name: str
    alpha: int
    beta: int
    sign: int
    half: str
    pos: Fraction  # parameter along the basis arc


@dataclass(frozen=True)
class Edge:
    family: str
    curve: int
    index: int
    tail: int
    head: int
    left: int
    right: int


@dataclass(frozen=True)
class Region:
    id: int
    corners: tuple  # (point id, ea, eb)
    euler_characteristic: int
    boundary_circuits: int
    faces: int

    @property
    def corner_count(self) -> int:
        return len(self.corners)

    @property
    def is_disk(self) -> bool:
        return self.euler_characteristic == 1 and self.boundary_circuits == 1


@dataclass(frozen=True)
class HeegaardDiagram:
    points: tuple
    alpha_circles: dict  # curve index -> tuple of point ids in circle order
    beta_circles: dict
    alpha_edges: tuple
    beta_edges: tuple
    regions: tuple
    quadrants: dict  # point id -> {(ea, eb): region id}
    pointed_region: int
    genus: int
    reversed: bool = False

    @property
    def region_count(self) -> int:
        return len(self.regions)

    @cached_property
    def cells(self) -> dict:
        """``(alpha, beta) -> point ids`` in circle order along alpha."""
        out = {}
        for a, seq in sorted(self.alpha_circles.items()):
            for pid in seq:
                out.setdefault((a, self.points[pid].beta), []).append(pid)
        return {k: tuple(v) for k, v in out.items()}

    @property
    def edges(self) -> tuple:
        return self.alpha_edges + self.beta_edges

    def point_by_name(self, name: str) -> Point:
        for p in self.points:
            if p.name == name:
                return p
        raise KeyError(name)

    def cell_table(self) -> dict:
        """Point names for every ``(alpha, beta)`` pair, including empty pairs."""
        return {
            (a, b): tuple(self.points[p].name for p in self.cells.get((a, b), ()))
            for a in sorted(self.alpha_circles)
            for b in sorted(self.beta_circles)
        }

    def zero_domain(self) -> tuple:
        return (0,) * len(self.regions)

    def domain_of(self, region_ids) -> tuple:
        coeffs = [0] * len(self.regions)
        for r in region_ids:
            coeffs[r] += 1
        return tuple(coeffs)


# --------------------------------------------------------------------------
# construction


class _Faces:
    """Faces of one polygon copy cut by a family of non-crossing chords."""

    def __init__(self, page: Page, curves, half: str):
        self.page = page
        self.half = half
        nside = len(page.boundary_word)
        marks = {(i, Fraction(0)) for i in range(nside)}
        self.partner = {}
        self.traversal_start = {}
        for ci, curve in enumerate(curves):
            for j, (a, b) in enumerate(chords(page, curve)):
                for x in (a, b):
                    if x in marks:
                        raise InconsistentDiagram(f"chord endpoint collision at {x}")
                    marks.add(x)
                self.partner[a] = (b, (ci, j, 1))
                self.partner[b] = (a, (ci, j, -1))
        self.marks = sorted(marks)
        self.where = {x: k for k, x in enumerate(self.marks)}
        n = len(self.marks)
        self.interval_face = [None] * n
        self.faces = []  # list of dicts: intervals, corners
        self.chord_face = {}  # (curve, chord, direction) -> face
        for start in range(n):
            if self.interval_face[start] is not None:
                continue
            fid = len(self.faces)
            face = {"intervals": [], "corners": []}
            cur = start
            while True:
                if self.interval_face[cur] is not None:
                    raise InconsistentDiagram("face tracing revisited an interval")
                self.interval_face[cur] = fid
                face["intervals"].append(cur)
                q = self.marks[(cur + 1) % n]
                if q in self.partner:
                    q2, key = self.partner[q]
                    self.chord_face[key] = fid
                    face["corners"].append(q)
                    face["corners"].append(q2)
                    cur = self.where[q2]
                else:
                    cur = (cur + 1) % n
                if cur == start:
                    break
            self.faces.append(face)

    def interval_from(self, loc) -> int:
        return self.where[loc]

    def interval_to(self, loc) -> int:
        return (self.where[loc] - 1) % len(self.marks)

    def interval_side(self, k: int) -> int:
        return self.marks[k][0]

    def seam_intervals(self):
        """Yield ``(key, face)`` for intervals lying on boundary segments."""
        word = self.page.boundary_word
        n = len(self.marks)
        for k, (side, t) in enumerate(self.marks):
            sym = word[side]
            if not isinstance(sym, Segment):
                continue
            nside, nt = self.marks[(k + 1) % n]
            end = nt if nside == side and nt > t else Fraction(1)
            yield (sym.label, t, end), self.interval_face[k]


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def diagram_from_curves(page: Page, images, basepoint_arc: int | None = None) -> HeegaardDiagram:
    """Assemble the diagram for ``page`` given the images ``h(b_i)``.

    ``images`` lists ``h(b_i)`` in the order of ``page.arc_indices``.
    """
    arcs = page.arc_indices
    images = tuple(images)
    if len(images) != len(arcs):
        raise InconsistentDiagram("one image curve per basis arc required")
    if has_bigon(page, images):
        raise NonMinimalPosition("an image curve admits a bigon against a basis arc")
    pushoffs = tuple(pushoff_basis_arc(page, i) for i in arcs)
    for b, hb in zip(pushoffs, images):
        if (hb.start, hb.end) != (b.start, b.end):
            raise InconsistentDiagram("monodromy must fix the boundary")

    halves = {TOP: _Faces(page, pushoffs, TOP), BOTTOM: _Faces(page, images, BOTTOM)}
    offsets = {TOP: 0, BOTTOM: len(halves[TOP].faces)}
    nfaces = offsets[BOTTOM] + len(halves[BOTTOM].faces)

    def gface(half, fid):
        return offsets[half] + fid

    # glue across the seam
    uf = _UnionFind(nfaces)
    seam = {}
    for half, fc in halves.items():
        for key, fid in fc.seam_intervals():
            seam.setdefault(key, {})[half] = gface(half, fid)
    for key, both in seam.items():
        if set(both) != {TOP, BOTTOM}:
            raise InconsistentDiagram(f"seam interval {key} is not matched")
        uf.union(both[TOP], both[BOTTOM])
    roots = sorted({uf.find(f) for f in range(nfaces)})

    # points
    raw = []
    for half, curves in ((TOP, pushoffs), (BOTTOM, images)):
        for bidx, curve in zip(arcs, curves):
            for k, cr in enumerate(curve.crossings):
                sign = cr.direction if half == TOP else -cr.direction
                raw.append((half, cr.arc, cr.pos, bidx, k, sign))
    tops = sorted((r for r in raw if r[0] == TOP), key=lambda r: r[1])
    bots = sorted((r for r in raw if r[0] == BOTTOM), key=lambda r: (r[1], r[2]))
    points = []
    pid_of = {}
    for r in tops + bots:
        half, arc, pos, bidx, k, sign = r
        pid = len(points)
        name = f"c{arc}" if half == TOP else f"p{len(points) - len(tops) + 1}"
        points.append(Point(pid, name, arc, bidx, sign, half, pos))
        pid_of[(half, bidx, k)] = pid

    alpha = {}
    for a in arcs:
        top = sorted((p for p in points if p.alpha == a and p.half == TOP), key=lambda p: p.pos)
        bot = sorted((p for p in points if p.alpha == a and p.half == BOTTOM), key=lambda p: -p.pos)
        alpha[a] = tuple(p.id for p in top + bot)
    beta = {}
    for bidx, b, hb in zip(arcs, pushoffs, images):
        seq = [pid_of[(TOP, bidx, k)] for k in range(len(b.crossings))]
        seq += [pid_of[(BOTTOM, bidx, k)] for k in reversed(range(len(hb.crossings)))]
        beta[bidx] = tuple(seq)

    # side regions seen from each end of each edge
    def region(half, fid):
        return uf.find(gface(half, fid))

    def alpha_sides(p: Point, leaving: bool):
        fc = halves[p.half]
        plus = (page.side_index(p.alpha, 1), p.pos)
        minus = (page.side_index(p.alpha, -1), 1 - p.pos)
        forward_s = (p.half == TOP) == leaving
        if forward_s:
            left, right = fc.interval_from(plus), fc.interval_to(minus)
        else:
            left, right = fc.interval_to(plus), fc.interval_from(minus)
        return region(p.half, fc.interval_face[left]), region(p.half, fc.interval_face[right])

    curves_by_half = {TOP: dict(zip(arcs, pushoffs)), BOTTOM: dict(zip(arcs, images))}
    index_in_curve = {pid: key for key, pid in pid_of.items()}

    def beta_sides(p: Point, leaving: bool):
        half, bidx, k = index_in_curve[p.id]
        ci = arcs.index(bidx)
        fc = halves[half]
        curve = curves_by_half[half][bidx]
        # chord k ends at crossing k, chord k + 1 starts there (curve direction)
        along_curve = (half == TOP) == leaving
        j = k + 1 if along_curve else k
        if curve.closed:
            j %= len(curve.crossings)
        return (
            region(half, fc.chord_face[(ci, j, 1)]),
            region(half, fc.chord_face[(ci, j, -1)]),
        )

    def make_edges(family, circles, sides):
        out = []
        for c, seq in sorted(circles.items()):
            m = len(seq)
            for i, tail in enumerate(seq):
                head = seq[(i + 1) % m]
                lt, rt = sides(points[tail], True)
                lh, rh = sides(points[head], False)
                if (lt, rt) != (lh, rh):
                    raise InconsistentDiagram(f"{family} edge {c}/{i} changes sides")
                out.append(Edge(family, c, i, tail, head, lt, rt))
        return tuple(out)

    alpha_edges = make_edges("alpha", alpha, alpha_sides)
    beta_edges = make_edges("beta", beta, beta_sides)

    relabel = {r: i for i, r in enumerate(roots)}
    alpha_edges = tuple(replace(e, left=relabel[e.left], right=relabel[e.right]) for e in alpha_edges)
    beta_edges = tuple(replace(e, left=relabel[e.left], right=relabel[e.right]) for e in beta_edges)

    quadrants = _quadrants(points, alpha, beta, alpha_edges, beta_edges)

    # region topology
    faces_in = Counter(relabel[uf.find(f)] for f in range(nfaces))
    seams_in = Counter(relabel[uf.find(both[TOP])] for both in seam.values())
    regions = _regions(len(roots), faces_in, seams_in, points, quadrants, alpha, beta, alpha_edges, beta_edges)

    # face corners must agree with quadrant ownership
    corner_count = Counter()
    for half, fc in halves.items():
        word = page.boundary_word
        for fid, face in enumerate(fc.faces):
            r = relabel[region(half, fid)]
            corner_count[r] += sum(1 for x in face["corners"] if isinstance(word[x[0]], ArcSide))
    for reg in regions:
        if corner_count[reg.id] != reg.corner_count:
            raise InconsistentDiagram(f"region {reg.id}: face corners disagree with quadrants")

    if basepoint_arc is None:
        basepoint_arc = 1 if 1 in arcs else arcs[0]
    seg = page.segment_after(basepoint_arc, 1)
    top = halves[TOP]
    loc = (page.segment_index(seg), pushoffs[arcs.index(basepoint_arc)].end.pos)
    pointed = relabel[region(TOP, top.interval_face[top.interval_from(loc)])]

    v, e = len(points), len(alpha_edges) + len(beta_edges)
    twice = 2 - (v - e + sum(r.euler_characteristic for r in regions))
    if twice != 2 * len(arcs):
        raise InconsistentDiagram(f"genus {twice / 2} differs from basis size {len(arcs)}")
    return HeegaardDiagram(
        tuple(points), alpha, beta, alpha_edges, beta_edges, regions, quadrants, pointed, len(arcs)
    )


def _edge_at(circles, edges_by_curve, pid, curve, forward):
    seq = circles[curve]
    i = seq.index(pid)
    return edges_by_curve[curve][i if forward else (i - 1) % len(seq)]


def _quadrants(points, alpha, beta, alpha_edges, beta_edges):
    ae, be = {}, {}
    for e in alpha_edges:
        ae.setdefault(e.curve, []).append(e)
    for e in beta_edges:
        be.setdefault(e.curve, []).append(e)
    out = {}
    for p in points:
        qs = {}
        for ea, eb in QUADRANTS:
            ea_edge = _edge_at(alpha, ae, p.id, p.alpha, ea > 0)
            eb_edge = _edge_at(beta, be, p.id, p.beta, eb > 0)
            via_alpha = ea_edge.left if eb * p.sign > 0 else ea_edge.right
            via_beta = eb_edge.left if ea * p.sign < 0 else eb_edge.right
            if via_alpha != via_beta:
                raise InconsistentDiagram(f"quadrant {(ea, eb)} at {p.name} is ambiguous")
            qs[(ea, eb)] = via_alpha
        out[p.id] = qs
    return out


def _regions(nreg, faces_in, seams_in, points, quadrants, alpha, beta, alpha_edges, beta_edges):
    ae, be = {}, {}
    for e in alpha_edges:
        ae.setdefault(e.curve, []).append(e)
    for e in beta_edges:
        be.setdefault(e.curve, []).append(e)
    corners = {r: [] for r in range(nreg)}
    # boundary circuits: union edge sides that meet at a corner of the region
    sides = {}
    for e in alpha_edges + beta_edges:
        for s, r in ((1, e.left), (-1, e.right)):
            sides[(e.family, e.curve, e.index, s)] = r
    keys = {k: i for i, k in enumerate(sides)}
    uf = _UnionFind(len(keys))
    for p in points:
        for (ea, eb), r in quadrants[p.id].items():
            corners[r].append((p.id, ea, eb))
            a_edge = _edge_at(alpha, ae, p.id, p.alpha, ea > 0)
            b_edge = _edge_at(beta, be, p.id, p.beta, eb > 0)
            a_side = 1 if eb * p.sign > 0 else -1
            b_side = 1 if ea * p.sign < 0 else -1
            uf.union(
                keys[("alpha", a_edge.curve, a_edge.index, a_side)],
                keys[("beta", b_edge.curve, b_edge.index, b_side)],
            )
    circuits = Counter()
    for k, i in keys.items():
        if uf.find(i) == i:
            circuits[sides[k]] += 1
    return tuple(
        Region(r, tuple(sorted(corners[r])), faces_in[r] - seams_in[r], circuits[r], faces_in[r])
        for r in range(nreg)
    )


def build_diagram(ob) -> HeegaardDiagram:
    """The pointed Heegaard diagram of an open book in its given basis."""
    page = ob.page
    arcs = page.arc_indices
    images = apply_monodromy_family(tuple(pushoff_basis_arc(page, i) for i in arcs), ob.monodromy, page)
    return diagram_from_curves(page, images, getattr(ob, "basepoint_arc", None))


def reverse_diagram(d: HeegaardDiagram) -> HeegaardDiagram:
    """Swap the roles of the two curve families."""
    swap = {"alpha": "beta", "beta": "alpha"}
    points = tuple(replace(p, alpha=p.beta, beta=p.alpha, sign=-p.sign) for p in d.points)
    quadrants = {pid: {(eb, ea): r for (ea, eb), r in qs.items()} for pid, qs in d.quadrants.items()}
    regions = tuple(
        replace(r, corners=tuple(sorted((p, eb, ea) for p, ea, eb in r.corners))) for r in d.regions
    )
    return HeegaardDiagram(
        points,
        d.beta_circles,
        d.alpha_circles,
        tuple(replace(e, family=swap[e.family]) for e in d.beta_edges),
        tuple(replace(e, family=swap[e.family]) for e in d.alpha_edges),
        regions,
        quadrants,
        d.pointed_region,
        d.genus,
        not d.reversed,
    )


# --------------------------------------------------------------------------
# niceness and measures


def is_nice(d: HeegaardDiagram):
    """Every region away from the basepoint is a disk with 2 or 4 corners.

    Returns ``(nice, offenders)`` with offenders as
    ``(region id, corner count, euler characteristic)``.
    """
    bad = [
        (r.id, r.corner_count, r.euler_characteristic)
        for r in d.regions
        if r.id != d.pointed_region and not (r.is_disk and r.corner_count in (2, 4))
    ]
    return not bad, bad


def region_census(d: HeegaardDiagram) -> dict:
    """Counts of non-pointed regions by shape."""
    out = Counter()
    for r in d.regions:
        if r.id == d.pointed_region:
            continue
        if not r.is_disk:
            out["non-disk"] += 1
        else:
            out[{2: "bigon", 4: "square", 6: "hexagon"}.get(r.corner_count, f"{r.corner_count}-gon")] += 1
    return dict(sorted(out.items()))


def region_euler_measure(r: Region) -> Fraction:
    if not r.is_disk:
        raise NonDiskRegion(f"region {r.id} is not a disk")
    return 1 - Fraction(r.corner_count, 4)


def euler_measure(d: HeegaardDiagram, phi) -> Fraction:
    return sum(
        (a * region_euler_measure(d.regions[i]) for i, a in enumerate(phi) if a),
        Fraction(0),
    )


def point_measure(d: HeegaardDiagram, phi, x) -> Fraction:
    total = Fraction(0)
    for pid in x:
        total += Fraction(sum(phi[r] for r in d.quadrants[pid].values()), 4)
    return total


def domain_boundary(d: HeegaardDiagram, phi) -> Counter:
    """Endpoints of the alpha part of the boundary of ``phi``, with signs."""
    out = Counter()
    for e in d.alpha_edges:
        m = phi[e.left] - phi[e.right]
        if m:
            out[e.head] += m
            out[e.tail] -= m
    return Counter({k: v for k, v in out.items() if v})


def generator_difference(x, y) -> Counter:
    out = Counter()
    for p in y:
        out[p] += 1
    for p in x:
        out[p] -= 1
    return Counter({k: v for k, v in out.items() if v})


def maslov_index(d: HeegaardDiagram, phi, x, y) -> Fraction:
    if domain_boundary(d, phi) != generator_difference(x, y):
        raise NotADomain("domain does not connect the given generators")
    return euler_measure(d, phi) + point_measure(d, phi, x) + point_measure(d, phi, y)
