import pytest

from gmd_extremes.gmd import GmdParams

SHAPES = (0.5, 1.0, 1.5, 6.0)
SCALES = (0.5, 1.0, 2.0)


@pytest.fixture
def maxwell():
    """k = 1, sigma = 1: density x^2 phi(x)."""
    return GmdParams(1.0, 1.0)


# criterion number -> (passed, description); filled by test_acceptance.py
CRITERIA = {}
CRITERIA_TOTAL = 8


@pytest.fixture
def criterion():
    def record(number, passed, detail):
        CRITERIA[number] = (bool(passed), detail)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in range(1, CRITERIA_TOTAL + 1):
        if number in CRITERIA:
            passed, detail = CRITERIA[number]
            terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}")
        else:
            terminalreporter.write_line(f"criterion {number}: NOT RUN")
