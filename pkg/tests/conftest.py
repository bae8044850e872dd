import pytest

from polyred.exact import H, Polyhedron


def hpoly(rows, lin=(), d=None, name=None):
    """H-polyhedron from 0-based linearity indices."""
    if d is None:
        d = len(rows[0]) - 1
    return Polyhedron(tuple(tuple(r) for r in rows), frozenset(lin), H, name, d)


SQUARE = [(0, 1, 0), (1, -1, 0), (0, 0, 1), (1, 0, -1)]
TRIANGLE = [(0, 1, 0), (0, 0, 1), (1, -1, -1)]
EXAMPLE = [(3, 1, -2), (0, 1, 0), (-6, -1, 4)]   # row 0 is an equation


@pytest.fixture
def square():
    return hpoly(SQUARE)


@pytest.fixture
def triangle():
    return hpoly(TRIANGLE)


@pytest.fixture
def example():
    return hpoly(EXAMPLE, lin=[0])


# acceptance criteria report one line each at the end of the run
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
