"""Homology over the field with two elements, and the contact class."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InconsistentDiagram, InvalidRoute, NicenessLost, NotAComplex, NotACycle, NotNice


def gf2_rank(vectors) -> int:
    """Rank of a list of int bitmasks."""
    basis = {}  # pivot bit -> vector
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = v
                break
            v ^= basis[top]
    return len(basis)


def gf2_solve(columns, target: int):
    """A set of column indices whose xor equals ``target``, or None."""
    basis = {}  # pivot -> (vector, combination mask)
    for j, v in enumerate(columns):
        combo = 1 << j
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = (v, combo)
                break
            bv, bc = basis[top]
            v ^= bv
            combo ^= bc
    combo = 0
    while target:
        top = target.bit_length() - 1
        if top not in basis:
            return None
        bv, bc = basis[top]
        target ^= bv
        combo ^= bc
    return [j for j in range(len(columns)) if combo >> j & 1]


@dataclass(frozen=True)
class ChainComplex:
    """Generators and the boundary map; column ``j`` is the boundary of generator ``j`` as a bitmask."""

    generators: tuple
    columns: tuple
    contact_index: int | None = None
    disks: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def size(self) -> int:
        return len(self.generators)

    def entry(self, i: int, j: int) -> int:
        """Coefficient of generator ``i`` in the boundary of generator ``j``."""
        return self.columns[j] >> i & 1

    def apply(self, vec: int) -> int:
        out = 0
        j = 0
        while vec:
            if vec & 1:
                out ^= self.columns[j]
            vec >>= 1
            j += 1
        return out

    def check(self):
        for j, col in enumerate(self.columns):
            if self.apply(col):
                raise NotAComplex(f"the boundary of the boundary of generator {j} is nonzero")

    def rank(self) -> int:
        return gf2_rank(self.columns)

    def homology_rank(self) -> int:
        self.check()
        return self.size - 2 * self.rank()

    def matrix(self) -> list:
        return [[self.entry(i, j) for j in range(self.size)] for i in range(self.size)]


@dataclass(frozen=True)
class HomologyReport:
    total_rank: int
    contact_status: str  # "nonvanishing", "vanishing" or "absent"
    witness: tuple = ()  # generators whose boundaries sum to c
    boundary_rank: int = 0


def homology_rank(cx: ChainComplex) -> int:
    return cx.homology_rank()


@dataclass(frozen=True)
class ContactClass:
    complex: ChainComplex
    index: int
    diagram: object = None

    def __iter__(self):
        return iter((self.complex, self.index))

    @property
    def generator(self):
        return self.complex.generators[self.index]


def contact_class(ob) -> ContactClass:
    """The contact generator in the complex of the reversed diagram."""
    from .floer import boundary_map
    from .heegaard import build_diagram, reverse_diagram

    d = reverse_diagram(build_diagram(ob))
    cx = boundary_map(d)
    if cx.contact_index is None:
        raise NotACycle("the contact generator is missing from the complex")
    if cx.columns[cx.contact_index]:
        raise NotACycle("the contact generator has nonzero boundary")
    return ContactClass(cx, cx.contact_index, d)


def contact_vanishes(cx: ChainComplex, c: int | None = None) -> HomologyReport:
    """Decide whether the contact generator is a boundary."""
    c = cx.contact_index if c is None else c
    rank = gf2_rank(cx.columns)
    total = cx.size - 2 * rank
    if c is None:
        return HomologyReport(total, "absent", (), rank)
    if cx.columns[c]:
        raise NotACycle("the contact generator has nonzero boundary")
    sol = gf2_solve(cx.columns, 1 << c)
    if sol is None:
        return HomologyReport(total, "nonvanishing", (), rank)
    if cx.apply(sum(1 << j for j in sol)) != 1 << c:
        raise NotAComplex("vanishing witness does not verify")
    return HomologyReport(total, "vanishing", tuple(cx.generators[j] for j in sol), rank)


def contact_report(ob) -> HomologyReport:
    cx, c = contact_class(ob)
    return contact_vanishes(cx, c)


@dataclass(frozen=True)
class IsoReport:
    generator_map: dict  # old generator -> new generator
    commutes: bool
    disk_counts_match: bool
    maps_contact: bool
    old_size: int
    new_size: int

    @property
    def ok(self) -> bool:
        return (
            self.commutes
            and self.disk_counts_match
            and self.maps_contact
            and self.old_size == self.new_size
            and len(self.generator_map) == self.old_size
        )


def _cell_slot(d):
    """point id -> (alpha, beta, ordinal along alpha within its cell)."""
    out = {}
    for key, pids in d.cells.items():
        for k, pid in enumerate(pids):
            out[pid] = (*key, k)
    return out


def _slot_key(slots, g):
    return frozenset(slots[p] for p in g)


def verify_positive_stabilization(ob, spec=None) -> IsoReport:
    """Check that adding the new top point gives a chain isomorphism.

    Points are matched across the two diagrams by their curve pair and their
    order along alpha within that pair; every generator of the stabilized
    complex must be an old generator plus the new top point.
    """
    from .floer import boundary_map, contact_generator
    from .heegaard import build_diagram, reverse_diagram
    from .openbook import StabilizationSpec, stabilize

    spec = StabilizationSpec(1) if spec is None else spec
    if spec.sign != 1:
        raise InvalidRoute("positive stabilization expected")
    new_ob = stabilize(ob, spec)
    d0 = reverse_diagram(build_diagram(ob))
    try:
        cx0 = boundary_map(d0)
    except NotNice as err:
        raise NotNice(str(err), err.offenders) from None
    d1 = reverse_diagram(build_diagram(new_ob))
    try:
        cx1 = boundary_map(d1)
    except NotNice as err:
        raise NicenessLost("the stabilized diagram is not nice", err.offenders) from None
    new_arc = min(new_ob.page.arc_indices)
    s0, s1 = _cell_slot(d0), _cell_slot(d1)
    extra = s1[d1.point_by_name(f"c{new_arc}").id]
    by_name1 = {_slot_key(s1, g): k for k, g in enumerate(cx1.generators)}
    gmap, idx = {}, {}
    for k, g in enumerate(cx0.generators):
        key = _slot_key(s0, g) | {extra}
        if key in by_name1:
            gmap[g] = cx1.generators[by_name1[key]]
            idx[k] = by_name1[key]
    commutes = len(idx) == cx0.size == cx1.size and all(
        cx0.entry(i, j) == cx1.entry(idx[i], idx[j]) for i in range(cx0.size) for j in range(cx0.size)
    )
    counts = len(idx) == cx0.size and all(
        len(cx0.disks.get((cx0.generators[j], cx0.generators[i]), ()))
        == len(cx1.disks.get((cx1.generators[idx[j]], cx1.generators[idx[i]]), ()))
        for i in range(cx0.size)
        for j in range(cx0.size)
    )
    c0 = contact_generator(d0)
    c1 = contact_generator(d1)
    maps_contact = gmap.get(c0) == c1
    return IsoReport(gmap, commutes, counts, maps_contact, cx0.size, cx1.size)


@dataclass(frozen=True)
class NegativeStabilizationReport:
    x: object
    y: object
    contact: object
    x_hits_contact: bool  # boundary of x is exactly c
    y_hits_contact: bool  # boundary of y is exactly c
    vanishes: bool
    report: HomologyReport = None


def verify_negative_stabilization(ob, spec=None) -> NegativeStabilizationReport:
    """Find the two new points on the new alpha-beta pair and check their bigons reach c."""
    from .floer import Generator, boundary_map, contact_generator
    from .heegaard import build_diagram, reverse_diagram
    from .openbook import StabilizationSpec, stabilize

    spec = StabilizationSpec(-1) if spec is None else spec
    new_ob = stabilize(ob, spec)
    d = reverse_diagram(build_diagram(new_ob))
    cx = boundary_map(d)
    c = contact_generator(d)
    new_arc = min(new_ob.page.arc_indices)
    top = d.point_by_name(f"c{new_arc}").id
    others = [p for p in d.cells[(new_arc, new_arc)] if p != top]
    if len(others) != 2:
        raise InconsistentDiagram("expected exactly two extra points on the new pair")
    rest = [p for p in c.points if p != top]
    x, y = (Generator(tuple(sorted(rest + [p]))) for p in others)
    ci = cx.contact_index
    index = {g: k for k, g in enumerate(cx.generators)}
    hx = cx.columns[index[x]] == 1 << ci
    hy = cx.columns[index[y]] == 1 << ci
    report = contact_vanishes(cx, ci)
    return NegativeStabilizationReport(x, y, c, hx, hy, report.contact_status == "vanishing", report)
