import pytest

from itsub.suites import get_universe, run_equivalence_scan
from itsub.universe import UniverseSpec

# (number, title, passed, detail) rows filled in by the acceptance tests
# and printed as a one-line-per-criterion dashboard after the run.
_CRITERIA: list[tuple[int, str, bool, str]] = []


@pytest.fixture(scope="session")
def record_criterion():
    def _record(number: int, title: str, passed: bool, detail: str) -> bool:
        _CRITERIA.append((number, title, passed, detail))
        return passed

    return _record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(_CRITERIA):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(
            f"criterion {number} [{status}] {title}: {detail}"
        )


@pytest.fixture(scope="session")
def u21():
    return get_universe(UniverseSpec(2, 1))


@pytest.fixture(scope="session")
def u22():
    return get_universe(UniverseSpec(2, 2))


@pytest.fixture(scope="session")
def u23():
    return get_universe(UniverseSpec(2, 3))


@pytest.fixture(scope="session")
def equivalence_scan():
    """The exhaustive decision/validation/translation sweep over every
    pair of the size-3 universe, run once per session and shared by the
    acceptance tests for criteria 1, 2, and 6."""
    return run_equivalence_scan()
