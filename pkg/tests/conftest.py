from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

from resistnorm.rig import FLOAT, LATTICE, RATIONAL, TROPICAL

FIXTURES = Path(__file__).parent / "fixtures"


def rig_values(rig, nonzero=False):
    """Hypothesis strategy for elements of ``rig``."""
    if rig is RATIONAL:
        lo = Fraction(1, 60) if nonzero else 0
        base = st.fractions(min_value=lo, max_value=1000, max_denominator=60)
    elif rig is FLOAT:
        base = st.floats(min_value=1e-6, max_value=1e6)
        if not nonzero:
            base = base | st.just(0.0)
    elif rig is LATTICE:
        base = st.just(True) if nonzero else st.booleans()
    elif rig is TROPICAL:
        base = st.builds(lambda n, k: Fraction(n, 2**k),
                         st.integers(-10_000, 10_000), st.integers(0, 6))
        if not nonzero:
            base = base | st.just(float("-inf"))
    else:
        raise ValueError(rig)
    return base.map(rig.value)


def q(x):
    return RATIONAL.value(Fraction(x))


@pytest.fixture
def fixtures_dir():
    return FIXTURES


# one PASS/FAIL line per acceptance criterion, printed after the run

_criteria = []


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    for key, label in report.user_properties:
        if key == "criterion":
            _criteria.append((label, report.passed))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed in sorted(_criteria, key=lambda item: int(item[0].split()[0][2:])):
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}")
