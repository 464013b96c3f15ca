import pytest

from k3ulrich import build_k3_lattice


def paper_grid(a_max=10):
    """(a, u) with 4a-2 <= u <= 5a+2, the range where h is very ample."""
    return [(a, u) for a in range(2, a_max + 1) for u in range(4 * a - 2, 5 * a + 3)]


@pytest.fixture
def L26():
    return build_k3_lattice(2, 6)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
