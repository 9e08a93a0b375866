import numpy as np
import pytest

from dcqd.qobj import OPTIMAL_PARAMS


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def opt():
    return OPTIMAL_PARAMS


def random_complex(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


_CRITERIA = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_criterion_" in report.nodeid:
        _CRITERIA.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in sorted(_CRITERIA):
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
