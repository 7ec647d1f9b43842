import pytest

from selectorate.model import BASELINE_PARAMS, SQRT_FAMILY
from selectorate.solver import solve_asymmetric, solve_equal

_criteria: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion covered by a test")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    n, title = marker.args
    outcome = "PASS" if call.excinfo is None else "FAIL"
    _criteria[n] = (outcome, title)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        outcome, title = _criteria[n]
        terminalreporter.write_line(f"criterion {n}: {outcome}  {title}")


@pytest.fixture(scope="session")
def base():
    return BASELINE_PARAMS


@pytest.fixture(scope="session")
def equal_base():
    return solve_equal(BASELINE_PARAMS, SQRT_FAMILY)


@pytest.fixture(scope="session")
def asym_base():
    return solve_asymmetric(BASELINE_PARAMS, SQRT_FAMILY)
