from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hfcontact.errors import NonDiskRegion, NonMinimalPosition, NotADomain
from hfcontact.floer import Generator, contact_generator, enumerate_disks, enumerate_generators
from hfcontact.heegaard import (
    build_diagram,
    diagram_from_curves,
    domain_boundary,
    euler_measure,
    is_nice,
    maslov_index,
    point_measure,
    region_census,
    reverse_diagram,
)
from hfcontact.openbook import StabilizationSpec, example_library, stabilize
from hfcontact.surface import Crossing, Curve, pushoff_basis_arc


def all_books():
    out = []
    for name, e in example_library().items():
        out.append((name, e.book))
        for s in (1, -1):
            out.append((f"{name}{s:+d}", stabilize(e.book, StabilizationSpec(s))))
    return out


BOOKS = all_books()


@pytest.fixture(scope="module")
def s5(library):
    return build_diagram(library["s5-good-basis"].book)


@pytest.fixture(scope="module")
def s5_squares(s5):
    r = reverse_diagram(s5)
    x = next(g for g in enumerate_generators(r) if g != contact_generator(r))
    return r, x, enumerate_disks(r, x)


class TestBuild:
    def test_cell_pattern(self, s5):
        t = s5.cell_table()
        assert t[(1, 1)] == ("c1",) and t[(2, 2)] == ("c2",) and t[(3, 3)] == ("c3",)
        assert len(t[(1, 2)]) == 2 and len(t[(1, 3)]) == 2
        assert len(t[(2, 3)]) == 1 and len(t[(3, 2)]) == 1
        assert t[(2, 1)] == () and t[(3, 1)] == ()

    def test_annulus_id(self, library):
        d = build_diagram(library["annulus-id"].book)
        assert d.genus == 1
        names = d.cell_table()[(1, 1)]
        assert len(names) == 2 and "c1" in names

    @pytest.mark.parametrize("name,ob", BOOKS, ids=[n for n, _ in BOOKS])
    def test_genus_and_quadrants(self, name, ob):
        d = build_diagram(ob)
        assert d.genus == ob.page.arc_count
        for p in d.points:
            qs = d.quadrants[p.id]
            assert sorted(qs) == sorted([(1, 1), (1, -1), (-1, 1), (-1, -1)])
        for r in d.regions:
            assert r.corner_count % 2 == 0

    @pytest.mark.parametrize("name,ob", BOOKS, ids=[n for n, _ in BOOKS])
    def test_each_quadrant_owned_once(self, name, ob):
        d = build_diagram(ob)
        owned = Counter((p, ea, eb) for r in d.regions for p, ea, eb in r.corners)
        assert all(v == 1 for v in owned.values())
        assert len(owned) == 4 * len(d.points)

    def test_contact_points_positive(self, s5):
        assert all(p.sign == 1 for p in s5.points if p.half == "top")

    def test_non_minimal_rejected(self, annulus):
        b1 = pushoff_basis_arc(annulus, 1)
        bent = Curve(
            (Crossing(1, Fraction(1, 8), 1), Crossing(1, Fraction(1, 4), -1), Crossing(1, Fraction(1, 2), 1)),
            b1.start,
            b1.end,
        )
        with pytest.raises(NonMinimalPosition):
            diagram_from_curves(annulus, (bent,))

    @pytest.mark.parametrize("sign", [1, -1])
    def test_new_beta_surrounded_by_pointed_region(self, library, sign):
        st = stabilize(library["s5-good-basis"].book, StabilizationSpec(sign))
        d = build_diagram(st)
        sides = {r for e in d.beta_edges if e.curve == 0 for r in (e.left, e.right)}
        others = sides - {d.pointed_region}
        assert d.pointed_region in sides
        assert all(d.regions[r].corner_count == 2 for r in others)
        assert len(others) == (0 if sign > 0 else 2)


class TestReverse:
    def test_involution(self, s5):
        assert reverse_diagram(reverse_diagram(s5)) == s5

    def test_transpose(self, s5):
        r = reverse_diagram(s5)
        t, rt = s5.cell_table(), r.cell_table()
        assert all(sorted(rt[(b, a)]) == sorted(names) for (a, b), names in t.items())

    def test_preserves(self, s5):
        r = reverse_diagram(s5)
        assert r.genus == s5.genus and r.pointed_region == s5.pointed_region
        assert [x.euler_characteristic for x in r.regions] == [x.euler_characteristic for x in s5.regions]
        assert all(p.sign == -q.sign for p, q in zip(r.points, s5.points))


class TestNice:
    def test_s5_good(self, s5):
        assert is_nice(s5) == (True, [])
        assert region_census(s5) == {"square": 4}

    def test_pla_basis(self, library):
        d = build_diagram(library["s5-pla-basis"].book)
        nice, bad = is_nice(d)
        assert not nice
        assert sorted(corners for _, corners, _ in bad) == [6, 6]
        # every region but the pointed one is a disk in this construction
        assert all(chi == 1 for _, _, chi in bad)
        assert region_census(d) == {"hexagon": 2, "square": 3}


class TestMeasures:
    def test_bigon_and_square(self, library, s5):
        st = build_diagram(stabilize(library["annulus-id"].book, StabilizationSpec(-1)))
        bigon = next(r for r in st.regions if r.id != st.pointed_region and r.corner_count == 2)
        assert euler_measure(st, st.domain_of([bigon.id])) == Fraction(1, 2)
        square = next(r for r in s5.regions if r.corner_count == 4)
        assert euler_measure(s5, s5.domain_of([square.id])) == 0

    def test_non_disk(self, library):
        d = build_diagram(library["annulus-id"].book)
        with pytest.raises(NonDiskRegion):
            euler_measure(d, d.domain_of([d.pointed_region]))

    def test_phi1(self, s5_squares):
        r, x, disks = s5_squares
        assert len(disks) == 2
        c = contact_generator(r)
        for y, poly in disks:
            assert y == c
            assert euler_measure(r, poly.domain) == 0
            assert point_measure(r, poly.domain, x) == Fraction(1, 2)
            assert maslov_index(r, poly.domain, x, c) == 1
            moved = Counter({p: 1 for p in c.points if p not in x.points})
            moved.update({p: -1 for p in x.points if p not in c.points})
            assert domain_boundary(r, poly.domain) == moved

    def test_zero(self, s5):
        z = s5.zero_domain()
        assert point_measure(s5, z, Generator((0,))) == 0
        assert domain_boundary(s5, z) == Counter()

    def test_single_quadrant(self, s5):
        p = s5.points[0]
        region = next(iter(s5.quadrants[p.id].values()))
        assert point_measure(s5, s5.domain_of([region]), Generator((p.id,))) >= Fraction(1, 4)

    def test_bigon_boundary(self, library):
        d = build_diagram(stabilize(library["annulus-id"].book, StabilizationSpec(-1)))
        bigon = next(r for r in d.regions if r.id != d.pointed_region and r.corner_count == 2)
        b = domain_boundary(d, d.domain_of([bigon.id]))
        assert sorted(b.values()) == [-1, 1]
        assert set(b) == {p for p, _, _ in bigon.corners}

    def test_not_a_domain(self, s5_squares):
        r, x, disks = s5_squares
        with pytest.raises(NotADomain):
            maslov_index(r, disks[0][1].domain, x, x)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-2, 2), min_size=5, max_size=5), st.lists(st.integers(-2, 2), min_size=5, max_size=5))
def test_measures_linear(a, b):
    d = build_diagram(example_library()["s5-good-basis"].book)
    n = len(d.regions)
    a = (a + [0] * n)[:n]
    b = (b + [0] * n)[:n]
    s = [u + v for u, v in zip(a, b)]
    x = contact_generator(d)
    assert euler_measure(d, s) == euler_measure(d, a) + euler_measure(d, b)
    assert point_measure(d, s, x) == point_measure(d, a, x) + point_measure(d, b, x)
    total = Counter(domain_boundary(d, a))
    total.update(domain_boundary(d, b))
    assert Counter({k: v for k, v in total.items() if v}) == domain_boundary(d, s)
