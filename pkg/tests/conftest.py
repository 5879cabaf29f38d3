import pytest

from qprank.oracle import FieldConfig, Oracle
from qprank.qpfile import load_qp

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n = mark.args[0]
    prev = _CRITERIA.get(n, "PASS")
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        if rep.skipped:
            state = "SKIP"
        elif rep.failed:
            state = "FAIL"
        else:
            state = "PASS"
        if prev == "FAIL" or (prev == "SKIP" and state == "PASS"):
            state = prev
        _CRITERIA[n] = state


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        terminalreporter.write_line(f"criterion {n}: {_CRITERIA[n]}")


@pytest.fixture(scope="session")
def cfg():
    return FieldConfig()


@pytest.fixture(scope="session")
def qps():
    names = ("triangle", "k3", "a2", "a3", "example-acyclic", "two-one", "cyclic-four")
    return {n: load_qp(f"{n}.qp") for n in names}


@pytest.fixture(scope="session")
def oracles(qps, cfg):
    return {n: Oracle(qp, cfg) for n, qp in qps.items()}
