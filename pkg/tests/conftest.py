import pytest

from latcoh.lattice import Rectangle, WeightModel

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def square_table():
    """w0 = (0,1,1,0) at (0,0),(0,1),(1,0),(1,1)."""
    return WeightModel(Rectangle((1, 1)), (0, 1, 1, 0))


@pytest.fixture
def annulus_table():
    """[0,2]^2 with weight 1 at the centre, 0 on the boundary."""
    return WeightModel.from_function(Rectangle((2, 2)), lambda p: 1 if p == (1, 1) else 0)
