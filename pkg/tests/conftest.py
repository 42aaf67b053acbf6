"""Shared fixtures: the seven forbidden fixtures and a few named graphs."""

from __future__ import annotations

import pytest

from cliquearr import Graph, build_arrangement, pattern_graph


@pytest.fixture(scope="session")
def fixture_graphs():
    return {pid: pattern_graph(pid) for pid in range(1, 8)}


@pytest.fixture(scope="session")
def fixture_arrangements(fixture_graphs):
    return {pid: build_arrangement(g) for pid, g in fixture_graphs.items()}


@pytest.fixture
def p3():
    return Graph(3, [(0, 1), (1, 2)])


@pytest.fixture
def c4():
    return Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


@pytest.fixture
def k3():
    return Graph(3, [(0, 1), (0, 2), (1, 2)])


@pytest.fixture
def bull():
    # triangle 0-1-2 with horns 3 at 0 and 4 at 1
    return Graph(5, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 4)])


@pytest.fixture
def sun3():
    # complete 3-sun: hub triangle 0,1,2; independent rim 3,4,5
    return Graph(
        6,
        [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (1, 4), (2, 4), (2, 5), (0, 5)],
    )
