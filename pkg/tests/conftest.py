import pytest

from sqperc.lattice import Window

ACCEPTANCE_LINES = []


@pytest.fixture
def window():
    return Window(6)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
