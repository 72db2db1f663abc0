"""The ten acceptance criteria; one PASS/FAIL line is printed per criterion.

The full run takes several minutes (criteria 3, 7, 8 and 10 sweep the corpus).
"""

import pytest

from goldman import acceptance


@pytest.fixture(scope="module")
def results():
    return {}


@pytest.mark.parametrize("number", range(1, len(acceptance.CRITERIA) + 1))
def test_criterion(number, results, capsys):
    (r,) = acceptance.run({number})
    results[number] = r
    with capsys.disabled():
        print("\n" + r.line(), flush=True)
    assert r.passed, r.line()
