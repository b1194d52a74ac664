"""The acceptance checks, runnable from the command line and from the tests."""

from __future__ import annotations

import time
from dataclasses import dataclass

from . import fileformat
from .errors import HFError
from .floer import all_disks, boundary_map, brute_force_disks, contact_generator, enumerate_generators
from .heegaard import build_diagram, is_nice, maslov_index, reverse_diagram
from .homology import contact_vanishes, verify_negative_stabilization, verify_positive_stabilization
from .openbook import StabilizationSpec, example_library, stabilize

S5_CELL_PATTERN = {
    (1, 1): ("c1",), (1, 2): 2, (1, 3): 2,
    (2, 1): 0, (2, 2): ("c2",), (2, 3): 1,
    (3, 1): 0, (3, 2): 1, (3, 3): ("c3",),
}


@dataclass
class CheckResult:
    number: int
    title: str
    ok: bool
    detail: str
    seconds: float
    limit: float | None = None
    error: str | None = None  # exception class name when the check raised

    @property
    def passed(self) -> bool:
        return self.ok and (self.limit is None or self.seconds < self.limit)

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        limit = f" (limit {self.limit:g} s)" if self.limit else ""
        return f"[{verdict}] criterion {self.number}: {self.title}: {self.detail} [{self.seconds:.3f} s{limit}]"


def timed(number, title, limit, fn) -> CheckResult:
    t0 = time.perf_counter()
    error = None
    try:
        ok, detail = fn()
    except HFError as err:
        ok, detail, error = False, f"{type(err).__name__}: {err}", type(err).__name__
    return CheckResult(number, title, ok, detail, time.perf_counter() - t0, limit, error)


def nice_books():
    """Library books with nice reversed diagrams, plus their default stabilizations."""
    out = []
    for name, entry in example_library().items():
        if not entry.expected.get("nice", True):
            continue
        out.append((name, entry.book))
        for sign in (1, -1):
            out.append((f"{name} {'+' if sign > 0 else '-'}stab", stabilize(entry.book, StabilizationSpec(sign))))
    return out


def table_matches(d) -> bool:
    cells = d.cell_table()
    for key, want in S5_CELL_PATTERN.items():
        got = cells.get(key, ())
        if isinstance(want, int):
            if len(got) != want:
                return False
        elif got != want:
            return False
    return True


def criterion_1():
    ob = fileformat.resolve(*fileformat.load_bundled("s5-good-basis"))
    d = build_diagram(ob)
    r = reverse_diagram(d)
    cx = boundary_map(r)
    gens = cx.generators
    c = contact_generator(r)
    disks = [p for found in all_disks(r, gens).values() for _, p in found]
    squares = [p for p in disks if p.arity == "square"]
    others = [g for g in gens if g != c]
    rep = contact_vanishes(cx)
    ok = (
        table_matches(d)
        and len(gens) == 2
        and len(squares) == 2
        and len(disks) == 2
        and all(cx.columns[cx.generators.index(g)] == 0 for g in gens)
        and rep.total_rank == 2
        and rep.contact_status == "nonvanishing"
        and len(others) == 1
    )
    return ok, (
        f"table={'ok' if table_matches(d) else 'mismatch'} generators={len(gens)} squares={len(squares)} "
        f"boundary={list(cx.columns)} rank={rep.total_rank} contact={rep.contact_status}"
    )


def criterion_2(name):
    ob = example_library()[name].book
    rep = verify_negative_stabilization(ob)
    ok = rep.x_hits_contact and rep.y_hits_contact and rep.vanishes and bool(rep.report.witness)
    return ok, f"dx=c:{rep.x_hits_contact} dy=c:{rep.y_hits_contact} contact={rep.report.contact_status}"


def criterion_3(name):
    ob = example_library()[name].book
    st = stabilize(ob, StabilizationSpec(1))
    nice, _ = is_nice(reverse_diagram(build_diagram(st)))
    rep = verify_positive_stabilization(ob)
    return nice and rep.ok, (
        f"nice={nice} generators {rep.old_size}->{rep.new_size} commutes={rep.commutes} "
        f"disk counts={rep.disk_counts_match} i(c)=c'={rep.maps_contact}"
    )


def criterion_4():
    bad = []
    for name, ob in nice_books():
        r = reverse_diagram(build_diagram(ob))
        tops = {p.id for p in r.points if p.half == "top"}
        for x, found in all_disks(r).items():
            for _, poly in found:
                if poly.negative_vertices & tops:
                    bad.append(name)
        cx = boundary_map(r)
        if cx.columns[cx.contact_index]:
            bad.append(name + " (c not a cycle)")
    return not bad, f"{len(nice_books())} diagrams, violations: {sorted(set(bad)) or 'none'}"


def _oracle_diagrams():
    for name, ob in nice_books():
        d = build_diagram(ob)
        yield name, d
        yield name + " reversed", reverse_diagram(d)


def oracle_mismatches(d):
    """Generator pairs where the two disk enumerations disagree."""
    gens = enumerate_generators(d)
    found = all_disks(d, gens)
    out = []
    cap = len(d.regions)
    for x in gens:
        for y in gens:
            walk = sorted(p.key() for yy, p in found[x] if yy == y)
            brute = sorted(p.key() for p in brute_force_disks(d, x, y, cap))
            if walk != brute:
                out.append((x, y, walk, brute))
    return out


def criterion_5():
    pairs = 0
    for name, d in _oracle_diagrams():
        bad = oracle_mismatches(d)
        n = len(enumerate_generators(d))
        pairs += n * n
        if bad:
            x, y, walk, brute = bad[0]
            return False, f"{name}: first differing pair {x.label(d)} -> {y.label(d)}: walk {walk} oracle {brute}"
    return True, f"{pairs} generator pairs agree"


def criterion_6():
    disks = 0
    complexes = 0
    for name, d in _oracle_diagrams():
        for x, found in all_disks(d).items():
            for y, poly in found:
                disks += 1
                if maslov_index(d, poly.domain, x, y) != 1:
                    return False, f"{name}: a disk {x.label(d)} -> {y.label(d)} has index != 1"
        boundary_map(d).check()
        complexes += 1
    return True, f"{disks} disks of index 1, {complexes} complexes with vanishing square"


def criterion_7():
    ob = example_library()["annulus-pos-twist"].book
    r = reverse_diagram(build_diagram(ob))
    rep = contact_vanishes(boundary_map(r))
    return rep.total_rank == 1 and rep.contact_status == "nonvanishing", (
        f"rank={rep.total_rank} contact={rep.contact_status}"
    )


def run_all() -> list:
    return [
        timed(1, "s5 example reproduces its intersection pattern and rank 2", 1.0, criterion_1),
        timed(2, "negative stabilization of annulus-id", 1.0, lambda: criterion_2("annulus-id")),
        timed(2, "negative stabilization of s5-good-basis", 1.0, lambda: criterion_2("s5-good-basis")),
        timed(3, "positive stabilization of annulus-id", 2.0, lambda: criterion_3("annulus-id")),
        timed(3, "positive stabilization of s5-good-basis", 2.0, lambda: criterion_3("s5-good-basis")),
        timed(4, "c is never a negative vertex and is a cycle", None, criterion_4),
        timed(5, "boundary walk equals brute force", 30.0, criterion_5),
        timed(6, "index one disks and square-zero boundaries", None, criterion_6),
        timed(7, "positive core twist gives rank 1", 1.0, criterion_7),
    ]
