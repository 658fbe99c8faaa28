import pytest

from millsim.core import SimConfig
from millsim.engine import run


@pytest.fixture(scope="session")
def short_trace():
    return run(SimConfig(num_ticks=100, seed=3))


def pytest_terminal_summary(terminalreporter):
    from ._report import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
