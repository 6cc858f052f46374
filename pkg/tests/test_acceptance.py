"""The ten acceptance criteria at their stated tolerances and time budgets.

Each test prints one PASS/FAIL line.  Run directly for the bare summary:
``python tests/test_acceptance.py``.
"""

import sys

import pytest

from nvk.suite import CRITERIA, run_criterion


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    r = run_criterion(number)
    with capsys.disabled():
        print("\n" + r.line())
    assert r.passed, r.line()


if __name__ == "__main__":
    results = [run_criterion(k) for k in sorted(CRITERIA)]
    for r in results:
        print(r.line())
    sys.exit(0 if all(r.passed for r in results) else 1)
