import pytest

from .reference_families import FAMILIES_DIR


@pytest.fixture
def families_dir():
    return FAMILIES_DIR


# -- acceptance summary ------------------------------------------------------

_acceptance_results: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or report.failed:
        status = "PASS" if report.passed else "FAIL"
        # a criterion split over several tests fails if any part fails
        if _acceptance_results.get(number, ("PASS",))[0] == "FAIL":
            status = "FAIL"
        _acceptance_results[number] = (status, title)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance_results):
        status, title = _acceptance_results[number]
        terminalreporter.write_line(f"criterion {number:>2}: {status}  {title}")
