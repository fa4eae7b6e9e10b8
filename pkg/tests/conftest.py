import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from affsel.examples import olsen  # noqa: E402
from affsel.multifunction import GraphMultifunction  # noqa: E402

_criteria: dict[str, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): an acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    if "test_acceptance.py" not in report.nodeid:
        return
    label = getattr(report, "criterion", None)
    if label:
        _criteria[label] = "PASS" if report.passed else "FAIL"


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker:
        outcome.get_result().criterion = marker.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_criteria, key=lambda s: int(s.split()[0][1:])):
        terminalreporter.write_line(f"[{_criteria[label]}] {label}")


@pytest.fixture
def olsen_graph():
    return olsen()


@pytest.fixture
def olsen_subsquare():
    """Olsen's multifunction restricted to |x|, |y| <= 1/2.

    Lower boundary |y| and upper boundary 1 - |x| have these breakpoints,
    so the region between them is the hull of these points.
    """
    h = "1/2"
    verts = [
        (x, y, h) for x in (h, "-1/2") for y in (h, "-1/2")
    ] + [(h, 0, 0), ("-1/2", 0, 0), (0, h, 1), (0, "-1/2", 1)]
    return GraphMultifunction.from_vertices(2, 1, verts)
