"""Acceptance criteria 1-7, each printed as one pass/fail line.

Run with ``pytest -s tests/test_acceptance.py`` to see the lines.
"""

import pytest

from hfcontact import checks

CASES = [
    pytest.param(1, "s5 example reproduces its intersection pattern and rank 2", 1.0, checks.criterion_1, id="criterion-1"),
    pytest.param(
        2, "negative stabilization of annulus-id", 1.0, lambda: checks.criterion_2("annulus-id"), id="criterion-2-annulus"
    ),
    pytest.param(
        2, "negative stabilization of s5-good-basis", 1.0, lambda: checks.criterion_2("s5-good-basis"), id="criterion-2-s5"
    ),
    pytest.param(
        3, "positive stabilization of annulus-id", 2.0, lambda: checks.criterion_3("annulus-id"), id="criterion-3-annulus"
    ),
    pytest.param(
        3, "positive stabilization of s5-good-basis", 2.0, lambda: checks.criterion_3("s5-good-basis"), id="criterion-3-s5"
    ),
    pytest.param(4, "c is never a negative vertex and is a cycle", None, checks.criterion_4, id="criterion-4"),
    pytest.param(5, "boundary walk equals brute force", 30.0, checks.criterion_5, id="criterion-5"),
    pytest.param(6, "index one disks and square-zero boundaries", None, checks.criterion_6, id="criterion-6"),
    pytest.param(7, "positive core twist gives rank 1", 1.0, checks.criterion_7, id="criterion-7"),
]


@pytest.mark.parametrize("number, title, limit, fn", CASES)
def test_criterion(number, title, limit, fn, capsys):
    result = checks.timed(number, title, limit, fn)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.ok, result.detail
    if limit is not None:
        assert result.seconds < limit, f"took {result.seconds:.3f} s, limit {limit} s"


def test_run_all_matches():
    results = checks.run_all()
    assert [r.number for r in results] == [c.values[0] for c in CASES]
    assert all(r.passed for r in results)
