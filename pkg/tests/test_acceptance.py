"""Acceptance criteria 1-9; one PASS/FAIL line each (see the terminal summary)."""

import pytest

from qaffine.acceptance import CRITERIA, run_criterion

RESULTS = {}


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=lambda n: f"criterion_{n}")
def test_criterion(number):
    result = run_criterion(number)
    RESULTS[number] = result
    print(result.line())
    assert result.passed, result.line()
