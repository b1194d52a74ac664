from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import loop, page_of
from hfcontact.errors import CoincidentPosition, NotClosed
from hfcontact.surface import (
    ArcSide,
    Crossing,
    Curve,
    Endpoint,
    MonodromyWord,
    Segment,
    Twist,
    apply_dehn_twist,
    apply_monodromy,
    apply_monodromy_family,
    chords,
    curve_intersections,
    curve_violations,
    family_violations,
    has_bigon,
    pushoff_basis_arc,
    reduce_family,
    reduce_to_minimal_position,
    renormalize,
    twist_family,
    validate_page,
)

HALF = Fraction(1, 2)


class TestValidatePage:
    def test_annulus(self, annulus):
        r = validate_page(annulus)
        assert r.valid and r.genus == 0 and r.boundary_components == 2
        assert r.euler_characteristic == 0

    def test_four_holed_sphere(self, star_page):
        r = validate_page(star_page)
        assert r.valid and r.genus == 0 and r.boundary_components == 4
        assert r.euler_characteristic == -2

    def test_repeated_side(self):
        r = validate_page(page_of("a1+ d1 a1+ d2"))
        assert not r.valid
        assert any("arc side repeated" in v for v in r.violations)
        assert any("arc side missing" in v for v in r.violations)

    def test_no_segment(self):
        r = validate_page(page_of("a1+ a1-"))
        assert any("no boundary segment" in v for v in r.violations)

    def test_punctured_torus(self):
        r = validate_page(page_of("a1+ d1 a2+ d2 a1- d3 a2- d4"))
        assert r.valid and r.genus == 1 and r.boundary_components == 1

    def test_reports_every_violation(self):
        r = validate_page(page_of("a1+ a2+ d1 d2"))
        assert len(r.violations) >= 3


class TestIntersections:
    def test_pushoff_meets_its_arc_positively(self, annulus):
        b1 = pushoff_basis_arc(annulus, 1)
        pts = curve_intersections(1, b1, annulus)
        assert len(pts) == 1 and pts[0].sign == 1

    def test_disjoint_chords(self, star_page):
        g1 = loop((1, "1/2", -1), (2, "1/2", -1))
        b3 = pushoff_basis_arc(star_page, 3)
        assert curve_intersections(g1, b3, star_page) == []

    def test_core_meets_pushoff_once(self, annulus, core):
        b1 = pushoff_basis_arc(annulus, 1)
        assert len(curve_intersections(core, b1, annulus)) == 1

    def test_sign_is_antisymmetric(self, annulus, core):
        b1 = pushoff_basis_arc(annulus, 1)
        (p,) = curve_intersections(core, b1, annulus)
        (q,) = curve_intersections(b1, core, annulus)
        assert p.sign == -q.sign

    def test_coincident_position(self, annulus):
        b1 = pushoff_basis_arc(annulus, 1)
        with pytest.raises(CoincidentPosition):
            curve_intersections(loop((1, "1/2", 1)), b1, annulus)

    def test_curves_on_star_page_meet_twice(self, star_page):
        g1 = loop((1, "1/2", -1), (2, "1/2", -1))
        g2 = loop((2, "1/3", -1), (3, "1/2", -1))
        assert len(curve_intersections(g1, g2, star_page)) == 2


class TestPushoff:
    def test_annulus(self, annulus):
        b1 = pushoff_basis_arc(annulus, 1)
        assert b1.crossings == (Crossing(1, HALF, 1),)
        assert b1.start == Endpoint("d2", HALF) and b1.end == Endpoint("d1", HALF)

    def test_star_page_arc_two(self, star_page):
        b2 = pushoff_basis_arc(star_page, 2)
        assert b2.crossings == (Crossing(2, HALF, 1),)
        assert {b2.start.segment, b2.end.segment} == {star_page.segment_after(2, 1), star_page.segment_after(2, -1)}

    def test_disjoint_from_other_arcs(self, star_page):
        for i in star_page.arc_indices:
            b = pushoff_basis_arc(star_page, i)
            assert not curve_violations(star_page, b)
            for j in star_page.arc_indices:
                if j != i:
                    assert curve_intersections(j, b, star_page) == []

    def test_pushoffs_are_disjoint(self, star_page):
        bs = [pushoff_basis_arc(star_page, i) for i in star_page.arc_indices]
        assert family_violations(star_page, bs) == []


class TestDehnTwist:
    def test_disjoint_curve_unchanged(self, star_page):
        g1 = loop((1, "1/2", -1), (2, "1/2", -1))
        b3 = pushoff_basis_arc(star_page, 3)
        assert apply_dehn_twist(b3, g1, 1, star_page) == b3

    def test_round_trip(self, annulus, core):
        b1 = pushoff_basis_arc(annulus, 1)
        for sign in (1, -1):
            there = apply_dehn_twist(b1, core, sign, annulus)
            assert apply_dehn_twist(there, core, -sign, annulus) == b1

    def test_core_twist_counts(self, annulus, core):
        # right-handed convention: the positive twist slides b1 off a1, the
        # negative one adds two crossings; see the decisions ledger
        b1 = pushoff_basis_arc(annulus, 1)
        assert apply_dehn_twist(b1, core, 1, annulus).count(1) == 0
        assert apply_dehn_twist(b1, core, -1, annulus).count(1) == 2

    def test_arc_is_rejected(self, annulus):
        b1 = pushoff_basis_arc(annulus, 1)
        with pytest.raises(NotClosed):
            apply_dehn_twist(b1, b1, 1, annulus)

    def test_output_embedded(self, star_page):
        g1 = loop((1, "1/2", -1), (2, "1/2", -1))
        bs = [pushoff_basis_arc(star_page, i) for i in star_page.arc_indices]
        out = twist_family(bs, g1, 1, star_page)
        assert family_violations(star_page, out) == []
        assert not has_bigon(star_page, out)

    def test_count_bound(self, star_page):
        # |t(b) . a| <= |b . a| + |b . g| |g . a|
        g = loop((1, "1/3", -1), (2, "1/3", -1))
        for i in star_page.arc_indices:
            b = pushoff_basis_arc(star_page, i)
            meets = len(curve_intersections(g, b, star_page))
            for j in star_page.arc_indices:
                t = apply_dehn_twist(b, g, 1, star_page)
                assert t.count(j) <= b.count(j) + meets * g.count(j)


class TestMonodromy:
    def test_empty_word(self, star_page):
        b = pushoff_basis_arc(star_page, 1)
        assert apply_monodromy(b, MonodromyWord(), star_page) == b

    def test_single_twist(self, annulus, core):
        b1 = pushoff_basis_arc(annulus, 1)
        w = MonodromyWord((Twist(core, -1),))
        assert apply_monodromy(b1, w, annulus) == apply_dehn_twist(b1, core, -1, annulus)

    def test_order_last_entry_first(self, star_page):
        g1 = loop((1, "1/2", -1), (2, "1/2", -1))
        g2 = loop((2, "1/3", -1), (3, "1/2", -1))
        b = pushoff_basis_arc(star_page, 2)
        w = MonodromyWord((Twist(g2, 1), Twist(g1, 1)))
        by_hand = apply_dehn_twist(apply_dehn_twist(b, g1, 1, star_page), g2, 1, star_page)
        assert apply_monodromy(b, w, star_page) == by_hand

    def test_then_prepends(self, core):
        w = MonodromyWord().then(core, 1).then(core, -1)
        assert [t.sign for t in w.twists] == [-1, 1]

    def test_s5_rows(self, library):
        ob = library["s5-good-basis"].book
        page = ob.page
        images = apply_monodromy_family([pushoff_basis_arc(page, i) for i in (1, 2, 3)], ob.monodromy, page)
        counts = [[images[j - 1].count(i) for j in (1, 2, 3)] for i in (1, 2, 3)]
        # the points c_i live on the top copy
        assert counts == [[0, 2, 2], [0, 0, 1], [0, 1, 0]]


class TestReduction:
    def test_minimal_unchanged(self, annulus):
        b1 = pushoff_basis_arc(annulus, 1)
        out, moves = reduce_family([b1], annulus)
        assert out == (b1,) and moves == 0

    def test_one_bigon(self, annulus):
        # b1 pushed across a1 and back: two extra crossings that bound a bigon
        b1 = pushoff_basis_arc(annulus, 1)
        c = Curve(
            (Crossing(1, Fraction(1, 8), 1), Crossing(1, Fraction(1, 4), -1), Crossing(1, HALF, 1)),
            b1.start,
            b1.end,
        )
        assert not curve_violations(annulus, c)
        r = reduce_to_minimal_position(c, {1}, annulus)
        assert r.count(1) == c.count(1) - 2

    def test_closed_curve_bigon(self, annulus):
        c = loop((1, "1/4", 1), (1, "1/2", -1))
        assert reduce_to_minimal_position(c, {1}, annulus).crossings == ()

    def test_renormalize_spacing(self):
        c = Curve((Crossing(1, Fraction(1, 7), 1), Crossing(1, Fraction(6, 7), -1)))
        (r,) = renormalize([c])
        assert [x.pos for x in r.crossings] == [Fraction(1, 3), Fraction(2, 3)]


STAR = "o1 a2+ h2 a2- o2 a3+ h3 a3- o3 a1+ h1 a1-"
CURVES = {
    "c12": loop((1, "1/2", -1), (2, "1/2", -1)),
    "c23": loop((2, "1/3", -1), (3, "1/2", -1)),
    "c13": loop((3, "1/2", -1), (1, "1/2", -1)),
    "h2": loop((2, "1/2", -1),),
}
words = st.lists(st.tuples(st.sampled_from(sorted(CURVES)), st.sampled_from((1, -1))), max_size=3)


@settings(max_examples=40, deadline=None)
@given(words)
def test_twist_words_invert(word):
    page = page_of(STAR)
    start = tuple(pushoff_basis_arc(page, i) for i in page.arc_indices)
    cur = start
    for name, s in word:
        cur = twist_family(cur, CURVES[name], s, page)
        assert family_violations(page, cur) == []
        assert not has_bigon(page, cur)
    for name, s in reversed(word):
        cur = twist_family(cur, CURVES[name], -s, page)
    assert cur == start


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(min_value=0, max_value=1).filter(lambda f: 0 < f < 1), min_size=1, max_size=6, unique=True))
def test_renormalize_keeps_order(positions):
    c = Curve(tuple(Crossing(1, p, 1 if k % 2 else -1) for k, p in enumerate(positions)))
    (r,) = renormalize([c])
    old = sorted(range(len(positions)), key=lambda k: positions[k])
    new = sorted(range(len(positions)), key=lambda k: r.crossings[k].pos)
    assert old == new
    assert len({x.pos for x in r.crossings}) == len(positions)


def test_chords_of_arc(annulus):
    b1 = pushoff_basis_arc(annulus, 1)
    assert len(chords(annulus, b1)) == 2
    assert ArcSide(1, 1) in annulus.boundary_word and Segment("d1") in annulus.boundary_word
