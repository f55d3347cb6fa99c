import pytest

from ptdirac.model import ModelParams, QuantumNumbers
from ptdirac.spectrum import solve_level

TABLE_PARAMS = ModelParams(mu=1.0, v0=1.0, s0=1.0, alpha=1e-4, c1=1.0)


@pytest.fixture
def table_params():
    return TABLE_PARAMS


@pytest.fixture
def ground_level():
    return solve_level(TABLE_PARAMS, QuantumNumbers(0, 0, 3))


ACCEPTANCE_LINES: dict[str, str] = {}


def record_criterion(key: str, passed: bool, detail: str) -> None:
    line = f"{key} {'PASS' if passed else 'FAIL'}: {detail}"
    ACCEPTANCE_LINES[key] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES, key=lambda k: int(k[1:])):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
