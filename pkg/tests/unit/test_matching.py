"""
Unit tests for the matching module.
"""

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from antimagic.exceptions import NotBipartiteError, StructuralError
from antimagic.matching import (
    check_st_partition,
    extend_to_mstar,
    has_augmenting_path,
    maximum_matching,
    st_partition,
    st_partition_with_trace,
)
from antimagic.models import Graph, Matching, STPartition


@st.composite
def bipartite_graphs(draw, max_side=8):
    """Draw a bipartite graph, possibly disconnected, with sides 0..a-1 and a..a+b-1."""
    a = draw(st.integers(min_value=1, max_value=max_side))
    b = draw(st.integers(min_value=1, max_value=max_side))
    pairs = [(x, a + y) for x in range(a) for y in range(b)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True))
    return Graph.from_edges(a + b, chosen)


def _path(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


@pytest.mark.parametrize(
    "graph, x_side, size",
    [
        (_path(4), {0, 2}, 2),
        (Graph.from_networkx(nx.complete_bipartite_graph(2, 3)), {0, 1}, 2),
        (Graph.from_networkx(nx.cycle_graph(6)), {0, 2, 4}, 3),
        (Graph.from_edges(3, []), {0, 1, 2}, 0),
    ],
)
def test_maximum_matching_size(graph, x_side, size):
    """Test matching sizes on small graphs."""
    y_side = set(range(graph.vertex_count)) - x_side
    matching = maximum_matching(graph, x_side, y_side)
    assert len(matching) == size
    assert not has_augmenting_path(graph, x_side, y_side, matching)


def test_maximum_matching_rejects_bad_sides(k33):
    """Test that sides which are not a bipartition are refused."""
    with pytest.raises(StructuralError):
        maximum_matching(k33, {0, 1, 3}, {2, 4, 5})


def test_has_augmenting_path_on_small_matching():
    """Test that the middle edge of P4 alone is augmentable."""
    graph = _path(4)
    matching = Matching.from_edges(graph, [1])
    assert has_augmenting_path(graph, {0, 2}, {1, 3}, matching)


def test_st_partition_star(k13):
    """Test that the center of a star is S."""
    result = st_partition(k13)
    assert result.S == frozenset({0})
    assert result.T == frozenset({1, 2, 3})
    assert len(result.matching) == 1


def test_st_partition_odd_path():
    """Test that the smaller side of P5 becomes S."""
    result = st_partition(_path(5))
    assert result.S == frozenset({1, 3})
    assert result.T == frozenset({0, 2, 4})


def test_st_partition_even_path():
    """Test the perfect matching case on P4."""
    result = st_partition(_path(4))
    assert result.S == frozenset({0, 2})
    assert result.T == frozenset({1, 3})
    assert result.matching.edges == frozenset({0, 2})


def test_st_partition_unsaturated_component():
    """Test a component where the matching misses the smaller side."""
    graph = Graph.from_edges(6, [(0, 2), (1, 2), (2, 5), (5, 3), (5, 4)])
    result, traces = st_partition_with_trace(graph)
    assert result.S == frozenset({2, 5})
    assert result.T == frozenset({0, 1, 3, 4})
    assert check_st_partition(graph, result) is None
    (trace,) = traces
    assert not trace.saturated
    assert trace.b_layers == (frozenset({2}),)
    assert trace.d0 == frozenset({result.matching.mate[5]})


def test_st_partition_isolated_vertex():
    """Test that an isolated vertex lands in T."""
    graph = Graph.from_edges(3, [(0, 1)])
    result = st_partition(graph)
    assert 2 in result.T
    assert check_st_partition(graph, result) is None


def test_st_partition_not_bipartite(triangle):
    """Test that an odd cycle is refused."""
    with pytest.raises(NotBipartiteError):
        st_partition(triangle)


@given(bipartite_graphs())
@settings(max_examples=300, deadline=None)
def test_st_partition_invariants(graph):
    """Test the S/T invariants and the layer property on random graphs."""
    result, traces = st_partition_with_trace(graph)
    assert check_st_partition(graph, result) is None
    assert len(result.matching) == len(result.S)
    for trace in traces:
        for layer in trace.a_layers:
            neighbours = {w for v in layer for w in graph.neighbors(v)}
            assert not neighbours & trace.d0


def test_check_st_partition_detects_problems(k33):
    """Test the checker on invalid partitions."""
    empty = Matching(edges=frozenset(), mate={}, edge_at={})
    both = STPartition(S=frozenset({0, 1, 2}), T=frozenset({2, 3, 4, 5}), matching=empty)
    assert "split" in check_st_partition(k33, both)
    unsaturated = STPartition(S=frozenset({0, 1, 2}), T=frozenset({3, 4, 5}), matching=empty)
    assert "not saturated" in check_st_partition(k33, unsaturated)
    edge_in_t = STPartition(S=frozenset(), T=frozenset(range(6)), matching=empty)
    assert "joins two vertices of T" in check_st_partition(k33, edge_in_t)


def test_extend_to_mstar_star(k13):
    """Test that every leaf of a star gets its only edge."""
    result = st_partition(k13)
    mstar = extend_to_mstar(k13, result)
    assert sorted(mstar.values()) == [0, 1, 2]


def test_extend_to_mstar_perfect(k33):
    """Test that a perfect matching is its own extension."""
    result = st_partition(k33)
    mstar = extend_to_mstar(k33, result)
    assert set(mstar.values()) == result.matching.edges


def test_extend_to_mstar_lowest_neighbor():
    """Test that an unsaturated T vertex takes the edge to its lowest S neighbor."""
    # Double star: centers 0 and 1, leaves 2, 3 on 0 and 4, 5 on 1.
    graph = Graph.from_edges(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)])
    result = STPartition(
        S=frozenset({0, 1}),
        T=frozenset({2, 3, 4, 5}),
        matching=Matching.from_edges(graph, [1, 3]),
    )
    mstar = extend_to_mstar(graph, result)
    assert mstar == {2: 1, 3: 2, 4: 3, 5: 4}


def test_extend_to_mstar_missing_neighbor():
    """Test that a T vertex without S neighbors is refused."""
    graph = Graph.from_edges(3, [(0, 1)])
    empty = Matching(edges=frozenset(), mate={}, edge_at={})
    result = STPartition(S=frozenset({0}), T=frozenset({1, 2}), matching=empty)
    with pytest.raises(StructuralError, match="no neighbor in S"):
        extend_to_mstar(graph, result)
