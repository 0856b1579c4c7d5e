import numpy as np
import pytest

from robpareto.core import builtin_instance


def pytest_configure(config):
    config._acceptance_lines = []


@pytest.fixture(scope="session")
def acceptance_log(request):
    """Collector for one PASS/FAIL line per acceptance criterion."""
    return request.config._acceptance_lines


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def problem1():
    return builtin_instance("problem-1")


@pytest.fixture(scope="session")
def problem1_fine():
    return builtin_instance("problem-1", step=0.01)


@pytest.fixture(scope="session")
def problem2():
    return builtin_instance("problem-2")


@pytest.fixture()
def rng():
    return np.random.default_rng(20260815)
