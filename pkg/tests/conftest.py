"""
Test fixtures and configuration for the antimagic orientation library.
"""

import os
import sys

import networkx as nx
import pytest

# Add the project root to the Python path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from antimagic.models import Graph  # noqa: E402


# Star with center 0 and three leaves
@pytest.fixture
def k13():
    return Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])


# K3,3 with sides {0, 1, 2} and {3, 4, 5}
@pytest.fixture
def k33():
    return Graph.from_networkx(nx.complete_bipartite_graph(3, 3))


# Path on three vertices; its middle vertex has degree 2
@pytest.fixture
def path3():
    return Graph.from_edges(3, [(0, 1), (1, 2)])


@pytest.fixture
def triangle():
    return Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def petersen():
    return Graph.from_networkx(nx.petersen_graph())


# Smallest complete graph the minimum-degree construction accepts
@pytest.fixture(scope="session")
def k34():
    return Graph.from_networkx(nx.complete_graph(34))


# Two disjoint stars K1,3 and K1,4
@pytest.fixture
def two_stars():
    return Graph.from_edges(
        9, [(0, 1), (0, 2), (0, 3), (4, 5), (4, 6), (4, 7), (4, 8)]
    )
