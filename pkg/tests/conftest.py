from fractions import Fraction

import pytest

from hfcontact.openbook import example_library
from hfcontact.surface import ArcSide, Crossing, Curve, Page, Segment


def page_of(text):
    out = []
    for tok in text.split():
        if tok[0] == "a" and tok[-1] in "+-":
            out.append(ArcSide(int(tok[1:-1]), 1 if tok[-1] == "+" else -1))
        else:
            out.append(Segment(tok))
    return Page(tuple(out))


def loop(*crossings):
    return Curve(tuple(Crossing(a, Fraction(p), d) for a, p, d in crossings))


@pytest.fixture(scope="session")
def library():
    return example_library()


@pytest.fixture
def annulus():
    return page_of("a1+ d1 a1- d2")


@pytest.fixture
def star_page():
    """Four-holed sphere cut along three radial arcs from the outer circle."""
    return page_of("o1 a2+ h2 a2- o2 a3+ h3 a3- o3 a1+ h1 a1-")


@pytest.fixture
def core():
    return loop((1, "1/4", 1))
