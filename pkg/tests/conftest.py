from __future__ import annotations

from pathlib import Path

import pytest

from aginvariant import BoundQuiver, parse_angulation, parse_quiver
from aginvariant.quiver import Arrow

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def fixture_path(name: str) -> Path:
    return FIXTURES / name


def load_angulation(name: str):
    return parse_angulation((FIXTURES / name).read_text())


def load_quiver(name: str) -> BoundQuiver:
    return parse_quiver((FIXTURES / name).read_text())


def make_quiver(n_vertices: int, arrows: list[tuple[str, int, int]],
                relations: list[tuple[str, str]] = ()) -> BoundQuiver:
    """Quiver on vertices "1".."n" from ``(id, source, target)`` triples."""
    return BoundQuiver(tuple(str(i) for i in range(1, n_vertices + 1)),
                       tuple(Arrow(a, str(s), str(t)) for a, s, t in arrows),
                       tuple(relations))


@pytest.fixture
def e1() -> BoundQuiver:
    return load_quiver("e1.quiver")


@pytest.fixture
def a7() -> BoundQuiver:
    # 1 -> 2 -> 3 <- 4 <- 5 -> 6 -> 7 with the two length-2 relations
    return make_quiver(7, [("a1", 1, 2), ("a2", 2, 3), ("a3", 4, 3), ("a4", 5, 4),
                           ("a5", 5, 6), ("a6", 6, 7)], [("a1", "a2"), ("a5", "a6")])


@pytest.fixture
def three_cycle() -> BoundQuiver:
    return make_quiver(3, [("x", 1, 2), ("y", 2, 3), ("z", 3, 1)],
                       [("x", "y"), ("y", "z"), ("z", "x")])


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
