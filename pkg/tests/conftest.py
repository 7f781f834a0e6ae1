import pytest

from rtgirth.graph import Graph

_CRITERIA: list[str] = []


@pytest.fixture(scope="session")
def criterion_log():
    return _CRITERIA


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in _CRITERIA:
            terminalreporter.write_line(line)


@pytest.fixture
def triangle():
    return Graph(3, [(0, 1, 1), (1, 2, 1), (2, 0, 1)])


@pytest.fixture
def two_cycle_35():
    return Graph(2, [(0, 1, 3), (1, 0, 5)])


@pytest.fixture
def dag():
    return Graph(3, [(0, 1, 1), (1, 2, 1)])
