from collections import OrderedDict

import pytest

from bellgames.model import Scenario
from bellgames.presets import preset

from oracles import brute_force_ns_vertices

_CRITERIA = OrderedDict()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = getattr(report, "_criterion", None)
    if marker is None:
        return
    number, title = marker
    entry = _CRITERIA.setdefault(number, {"title": title, "passed": True, "failed_tests": []})
    if report.failed:
        entry["passed"] = False
        entry["failed_tests"].append(report.nodeid.split("::")[-1])


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is not None:
        report._criterion = (m.args[0], m.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        entry = _CRITERIA[number]
        status = "PASS" if entry["passed"] else "FAIL"
        line = f"[{status}] criterion {number:>2}: {entry['title']}"
        if not entry["passed"]:
            line += f"  (failing: {', '.join(entry['failed_tests'])})"
        terminalreporter.write_line(line)


# -- fixtures ---------------------------------------------------------------


@pytest.fixture
def chsh_game():
    return preset("chsh_game")


@pytest.fixture
def pr_box():
    return preset("pr_box")


@pytest.fixture
def chsh_prior():
    return preset("chsh_prior")


@pytest.fixture
def vb_prior():
    return preset("vb_prior")


@pytest.fixture(scope="session")
def chsh_brute_force_vertices():
    return brute_force_ns_vertices(Scenario((2, 2), (2, 2)))
