"""One test per acceptance criterion, each at its stated tolerance and budget.

Every test prints a single PASS/FAIL line; the lines are also collected and
repeated in the terminal summary.
"""
import pytest

from primefield.acceptance import CRITERIA, run_criterion

@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=lambda n: f"criterion_{n:02d}")
def test_criterion(number, record_property):
    result = run_criterion(number, threads=2, seed=0)
    record_property("acceptance", result.line())
    print(result.line())
    assert result.passed, result.line()
