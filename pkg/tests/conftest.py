from __future__ import annotations

import pytest

_RESULTS: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    report = outcome.get_result()
    if report.when == "call" or report.outcome != "passed":
        n, title = mark.args
        _RESULTS[n] = (title, "PASS" if report.outcome == "passed" else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_RESULTS):
        title, verdict = _RESULTS[n]
        terminalreporter.write_line(f"criterion {n}: {verdict}  {title}")
