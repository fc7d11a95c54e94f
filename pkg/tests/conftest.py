import numpy as np
import pytest

_acceptance: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "acceptance(number, title): exit criterion reported in the summary"
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        previous = _acceptance.get(number, (title, "PASS"))[1]
        status = "PASS" if report.passed and previous == "PASS" else "FAIL"
        if report.skipped:
            status = "SKIP"
        _acceptance[number] = (title, status)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance):
        title, status = _acceptance[number]
        terminalreporter.write_line(f"[{status}] criterion {number}: {title}")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
