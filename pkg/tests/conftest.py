import sys
from pathlib import Path

import pytest

from memelements import Excitation, PolynomialCurve, TanhScaledCurve, TwoBranchCurve

sys.path.insert(0, str(Path(__file__).parent))

# acceptance criteria register their outcome here; printed after the run
ACCEPTANCE_LINES: list[tuple[str, bool, str]] = []


def record_acceptance(cid: str, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES.append((cid, ok, detail))
    print(f"{cid} {'PASS' if ok else 'FAIL'}: {detail}")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for cid, ok, detail in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(f"{cid} {'PASS' if ok else 'FAIL'}: {detail}")


@pytest.fixture
def cubic():
    return PolynomialCurve(coefficients=(0.0, 1.0, 0.0, 1.0 / 3.0))


@pytest.fixture
def tanh_curve():
    return TanhScaledCurve(a=1.0, b=1.0)


@pytest.fixture
def degenerate():
    return PolynomialCurve(coefficients=(0.0, 0.0, 0.5, -1.0 / 6.0))


@pytest.fixture
def loop_curve():
    return TwoBranchCurve(
        outgoing=PolynomialCurve(coefficients=(0.0, 1.0, 0.0, 1.0 / 3.0)),
        returning=PolynomialCurve(coefficients=(0.0, 4.0 / 3.0, 0.5)),
    )


@pytest.fixture
def drive():
    return Excitation()
