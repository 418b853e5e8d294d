import pytest

from colorcount.graph import Graph, all_graphs, complete, cycle, path


def paw() -> Graph:
    # triangle 0-1-2 with pendant 3 on vertex 0
    return Graph(4, frozenset({(0, 1), (0, 2), (1, 2), (0, 3)}))


@pytest.fixture(scope="session")
def small_graphs():
    """All graphs with n <= 4 up to isomorphism."""
    return [g for n in range(1, 5) for g in all_graphs(n)]


@pytest.fixture(scope="session")
def connected_small_graphs():
    return [g for n in range(1, 5) for g in all_graphs(n, connected=True)]


@pytest.fixture(scope="session")
def chordal_and_cycles():
    return {"K3": complete(3), "P4": path(4), "K4": complete(4), "paw": paw(),
            "C4": cycle(4), "C5": cycle(5)}


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import LINES
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(LINES, key=lambda l: int(l.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
