"""Generators and empty embedded bigons and squares of nice diagrams."""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from itertools import product

from .errors import NotNice
from .heegaard import (
    HeegaardDiagram,
    domain_boundary,
    generator_difference,
    is_nice,
    maslov_index,
)


@dataclass(frozen=True, order=True)
class Generator:
    points: tuple  # sorted point ids

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def permutation(self, d: HeegaardDiagram) -> dict:
        """The induced matching alpha index -> beta index."""
        return {d.points[p].alpha: d.points[p].beta for p in self.points}

    def names(self, d: HeegaardDiagram) -> tuple:
        return tuple(d.points[p].name for p in self.points)

    def label(self, d: HeegaardDiagram) -> str:
        return "+".join(self.names(d))


@dataclass(frozen=True)
class EmptyEmbeddedPolygon:
    domain: tuple
    negative_vertices: frozenset
    positive_vertices: frozenset
    trivial_vertices: frozenset
    arity: str  # "bigon" or "square"

    @property
    def support(self) -> tuple:
        return tuple(i for i, a in enumerate(self.domain) if a)

    def key(self):
        return (self.support, tuple(sorted(self.negative_vertices)), tuple(sorted(self.positive_vertices)))


def enumerate_generators(d: HeegaardDiagram) -> list:
    alphas = sorted(d.alpha_circles)
    by_alpha = {a: [] for a in alphas}
    for (a, b), pids in d.cells.items():
        by_alpha[a].extend(pids)
    out = []

    def rec(i, used_beta, chosen):
        if i == len(alphas):
            out.append(Generator(tuple(sorted(chosen))))
            return
        for pid in by_alpha[alphas[i]]:
            b = d.points[pid].beta
            if b not in used_beta:
                rec(i + 1, used_beta | {b}, chosen + [pid])

    rec(0, frozenset(), [])
    return sorted(out)


def contact_generator(d: HeegaardDiagram) -> Generator:
    """The sum of the points ``c_i`` where ``a_i`` meets ``b_i`` on the top page."""
    return Generator(tuple(sorted(p.id for p in d.points if p.half == "top")))


# --------------------------------------------------------------------------
# the polygon test shared by both enumerators


def _adjacent(q1, q2) -> bool:
    return (q1[0] == q2[0]) != (q1[1] == q2[1])


def check_polygon(d: HeegaardDiagram, phi, x: Generator, y: Generator):
    """Return an :class:`EmptyEmbeddedPolygon` if ``phi`` is one from x to y, else None."""
    if any(a not in (0, 1) for a in phi) or phi[d.pointed_region] or not any(phi):
        return None
    if domain_boundary(d, phi) != generator_difference(x, y):
        return None
    corners, interior = set(), set()
    for pid, qs in d.quadrants.items():
        inside = [q for q, r in qs.items() if phi[r]]
        n = len(inside)
        if n == 1:
            corners.add(pid)
        elif n == 2 and not _adjacent(*inside):
            return None
        elif n == 3:
            return None
        elif n == 4:
            interior.add(pid)
    if len(corners) not in (2, 4):
        return None
    if interior & (set(x) | set(y)):
        return None
    support = [i for i, a in enumerate(phi) if a]
    regions = d.regions
    # the interior of the closure must be an open disk
    parent = {r: r for r in support}

    def find(r):
        while parent[r] != r:
            parent[r] = parent[parent[r]]
            r = parent[r]
        return r

    inner_edges = 0
    boundary_adj = {}
    for e in d.edges:
        l, r = phi[e.left], phi[e.right]
        if l and r:
            inner_edges += 1
            parent[find(e.left)] = find(e.right)
        elif l or r:
            boundary_adj.setdefault(e.tail, []).append(e.head)
            boundary_adj.setdefault(e.head, []).append(e.tail)
    if len({find(r) for r in support}) != 1:
        return None
    chi = sum(regions[r].euler_characteristic for r in support) - inner_edges + len(interior)
    if chi != 1:
        return None
    # the boundary is a single circuit through every boundary point
    if not boundary_adj:
        return None
    start = next(iter(boundary_adj))
    seen, todo = {start}, [start]
    while todo:
        for nb in boundary_adj[todo.pop()]:
            if nb not in seen:
                seen.add(nb)
                todo.append(nb)
    if seen != set(boundary_adj):
        return None
    neg = set(x) - set(y)
    pos = set(y) - set(x)
    if corners != neg | pos:
        return None
    arity = "bigon" if len(corners) == 2 else "square"
    if maslov_index(d, phi, x, y) != 1:
        return None
    return EmptyEmbeddedPolygon(
        tuple(phi), frozenset(neg), frozenset(pos), frozenset(set(x) & set(y)), arity
    )


# --------------------------------------------------------------------------
# boundary walk


def _edge_lists(d: HeegaardDiagram):
    ae, be = {}, {}
    for e in d.alpha_edges:
        ae.setdefault(e.curve, []).append(e)
    for e in d.beta_edges:
        be.setdefault(e.curve, []).append(e)
    return ae, be


def _walk(seq, edges, p, q, forward: bool) -> list:
    """Edges (with signs) from ``p`` to ``q`` along a circle."""
    m = len(seq)
    i = seq.index(p)
    out = []
    while True:
        if forward:
            out.append((edges[i], 1))
            i = (i + 1) % m
        else:
            i = (i - 1) % m
            out.append((edges[i], -1))
        if seq[i] == q:
            return out
        if len(out) > m:
            raise RuntimeError("walk did not reach its target")


def _fill(d: HeegaardDiagram, chain: dict):
    """The 2-chain with boundary ``chain`` vanishing at the basepoint, if any."""
    nreg = len(d.regions)
    adj = [[] for _ in range(nreg)]
    for e in d.edges:
        c = chain.get(e, 0)
        adj[e.right].append((e.left, c))
        adj[e.left].append((e.right, -c))
    phi = [None] * nreg
    phi[d.pointed_region] = 0
    todo = deque([d.pointed_region])
    while todo:
        r = todo.popleft()
        for nb, c in adj[r]:
            v = phi[r] + c
            if phi[nb] is None:
                phi[nb] = v
                todo.append(nb)
            elif phi[nb] != v:
                return None
    if any(v is None for v in phi):
        return None
    return tuple(phi)


def _loop_domains(d, legs):
    """Domains bounded by a loop given as legs ``(family, curve, from, to)``."""
    ae, be = _edge_lists(d)
    circles = {"alpha": (d.alpha_circles, ae), "beta": (d.beta_circles, be)}
    for dirs in product((True, False), repeat=len(legs)):
        chain = Counter()
        for (fam, curve, p, q), fwd in zip(legs, dirs):
            seqs, edges = circles[fam]
            for e, s in _walk(seqs[curve], edges[curve], p, q, fwd):
                chain[e] += s
        phi = _fill(d, chain)
        if phi is not None:
            yield phi


def _require_nice(d):
    nice, bad = is_nice(d)
    if not nice:
        raise NotNice("diagram is not nice", bad)


def enumerate_disks(d: HeegaardDiagram, x: Generator) -> list:
    """Every empty embedded bigon or square leaving ``x``.

    Candidate boundaries are closed loops with two or four corners alternating
    between alpha and beta arcs, starting at points of ``x``; each loop is
    filled to the unique 2-chain vanishing at the basepoint and kept when it is
    an empty embedded polygon.
    """
    _require_nice(d)
    pts = d.points
    cells = d.cells
    found = {}
    xs = sorted(x.points)

    def consider(phi, y):
        poly = check_polygon(d, phi, x, y)
        if poly is not None:
            found.setdefault((y, poly.key()), (y, poly))

    for p in xs:
        pa, pb = pts[p].alpha, pts[p].beta
        for q in cells.get((pa, pb), ()):
            if q == p:
                continue
            y = Generator(tuple(sorted(set(xs) - {p} | {q})))
            for phi in _loop_domains(d, [("alpha", pa, p, q), ("beta", pb, q, p)]):
                consider(phi, y)
    for p, p2 in ((p, p2) for p in xs for p2 in xs if p < p2):
        i, j = pts[p].alpha, pts[p].beta
        l, k = pts[p2].alpha, pts[p2].beta
        for y1 in cells.get((i, k), ()):
            for y2 in cells.get((l, j), ()):
                y = Generator(tuple(sorted(set(xs) - {p, p2} | {y1, y2})))
                legs = [("alpha", i, p, y1), ("beta", k, y1, p2), ("alpha", l, p2, y2), ("beta", j, y2, p)]
                for phi in _loop_domains(d, legs):
                    consider(phi, y)
    return [found[k] for k in sorted(found)]


# --------------------------------------------------------------------------
# exhaustive oracle


def _connected_subsets(adj: dict, nodes, cap: int):
    """Each connected vertex subset of size <= cap exactly once."""
    for v in nodes:
        yield from _extend(adj, frozenset([v]), {u for u in adj[v] if u > v}, v, cap, set(adj[v]) | {v})


def _extend(adj, sub, ext, v, cap, closed_nbhd):
    yield sub
    if len(sub) >= cap:
        return
    ext = set(ext)
    while ext:
        w = min(ext)
        ext.discard(w)
        new = {u for u in adj[w] if u > v and u not in closed_nbhd}
        yield from _extend(adj, sub | {w}, ext | new, v, cap, closed_nbhd | set(adj[w]))


def region_adjacency(d: HeegaardDiagram, skip=()) -> dict:
    skip = set(skip)
    adj = {r.id: set() for r in d.regions if r.id not in skip}
    for e in d.edges:
        if e.left in adj and e.right in adj and e.left != e.right:
            adj[e.left].add(e.right)
            adj[e.right].add(e.left)
    return adj


def brute_force_disks(d: HeegaardDiagram, x: Generator, y: Generator, cap: int | None = None) -> list:
    """All empty embedded bigons and squares from x to y, by exhaustive search.

    Every connected set of at most ``cap`` non-pointed regions is tried as a
    0/1 domain.  Complete when ``cap`` is at least the region count.
    """
    cap = len(d.regions) if cap is None else cap
    out = []
    for sub in _subsets_by_boundary(d, cap).get(_key(generator_difference(x, y)), ()):
        poly = check_polygon(d, d.domain_of(sub), x, y)
        if poly is not None:
            out.append(poly)
    return sorted(out, key=EmptyEmbeddedPolygon.key)


def _key(counter) -> tuple:
    return tuple(sorted(counter.items()))


_SUBSET_CACHE = {}


def _subsets_by_boundary(d: HeegaardDiagram, cap: int) -> dict:
    ck = (id(d), cap)
    hit = _SUBSET_CACHE.get(ck)
    if hit is not None and hit[0] is d:
        return hit[1]
    adj = region_adjacency(d, skip=[d.pointed_region])
    table = {}
    for sub in _connected_subsets(adj, sorted(adj), cap):
        b = domain_boundary(d, d.domain_of(sub))
        if b:
            table.setdefault(_key(b), []).append(tuple(sorted(sub)))
    if len(_SUBSET_CACHE) > 16:
        _SUBSET_CACHE.clear()
    _SUBSET_CACHE[ck] = (d, table)
    return table


def all_disks(d: HeegaardDiagram, generators=None) -> dict:
    """``x -> [(y, polygon)]`` for every generator."""
    gens = enumerate_generators(d) if generators is None else generators
    return {x: enumerate_disks(d, x) for x in gens}


def boundary_map(d: HeegaardDiagram):
    """The chain complex of a nice diagram over the field with two elements."""
    from .homology import ChainComplex

    _require_nice(d)
    gens = enumerate_generators(d)
    index = {g: i for i, g in enumerate(gens)}
    columns = []
    disks = {}
    for x in gens:
        col = 0
        for y, poly in enumerate_disks(d, x):
            if y in index:
                col ^= 1 << index[y]
                disks.setdefault((x, y), []).append(poly)
        columns.append(col)
    c = contact_generator(d)
    cx = ChainComplex(tuple(gens), tuple(columns), index.get(c), disks)
    cx.check()
    return cx
