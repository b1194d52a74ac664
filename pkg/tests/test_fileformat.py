import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hfcontact import fileformat
from hfcontact.errors import ParseError
from hfcontact.openbook import Foot, StabilizationSpec, example_library, stabilize
from hfcontact.surface import ArcSide, Segment


@pytest.mark.parametrize("name", sorted(example_library()))
def test_round_trip(name):
    ob = example_library()[name].book
    text = fileformat.dumps(ob)
    back, specs = fileformat.loads(text)
    assert back == ob and specs == ()
    assert fileformat.dumps(back) == text


def test_stabilization_directives_round_trip():
    ob = example_library()["annulus-id"].book
    specs = (StabilizationSpec(-1), StabilizationSpec(1, (Foot("d2", Fraction(1, 3)), Foot("d2", Fraction(2, 3)))))
    back, got = fileformat.loads(fileformat.dumps(ob, specs))
    assert got == specs
    want = stabilize(stabilize(ob, specs[0]), specs[1])
    assert fileformat.resolve(back, got) == want


@given(st.integers(-20, 20), st.sampled_from([1, -1]))
def test_symbols(arc, side):
    sym = ArcSide(arc, side)
    assert fileformat.parse_symbol(fileformat.symbol_text(sym)) == sym


def test_segment_symbol():
    assert fileformat.parse_symbol("s1.0") == Segment("s1.0")


def test_json_error_position():
    with pytest.raises(ParseError) as err:
        fileformat.loads('{\n  "page": [,]\n}')
    assert err.value.line == 2
    assert err.value.column is not None
    assert "line 2" in str(err.value)


def _doc(**changes):
    doc = fileformat.to_document(example_library()["annulus-pos-twist"].book)
    doc.update(changes)
    return json.dumps(doc)


@pytest.mark.parametrize(
    "changes, fragment",
    [
        ({"format": "other/2"}, "unknown format"),
        ({"arcs": 2}, "arcs is 2"),
        ({"page": "a1+ d1"}, "page must be a list"),
        ({"monodromy": [{"sign": 2, "crossings": []}]}, "sign"),
        ({"monodromy": [{"sign": 1, "crossings": [[1, 0.5, 1]]}]}, "strings"),
        ({"monodromy": [{"sign": 1, "crossings": [[1, "1/0", 1]]}]}, "bad rational"),
        ({"monodromy": [{"sign": 1, "crossings": [[1, "1/2", 0]]}]}, "direction"),
        ({"page": ["a1+", "d1", "a1+", "d2"]}, "invalid open book"),
        ({"stabilize": [{"sign": 1, "feet": [["d1", "1/2"]]}]}, "feet"),
        ({"basepoint_arc": "one"}, "basepoint_arc"),
    ],
)
def test_bad_fields(changes, fragment):
    with pytest.raises(ParseError, match=fragment):
        fileformat.loads(_doc(**changes))


def test_missing_field():
    with pytest.raises(ParseError, match="missing field 'monodromy'"):
        fileformat.loads('{"page": ["a1+", "d1", "a1-", "d2"]}')


def test_load_file(tmp_path):
    ob = example_library()["s5-good-basis"].book
    path = tmp_path / "book.json"
    path.write_text(fileformat.dumps(ob))
    assert fileformat.load(path) == (ob, ())
