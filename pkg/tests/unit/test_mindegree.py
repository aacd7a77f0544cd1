"""
Unit tests for the mindegree module.
"""

import dataclasses
import logging

import networkx as nx
import pytest

from antimagic.exceptions import CounterexampleError, InternalAssertionError, PreconditionError
from antimagic.generators import near_regular
from antimagic.graph import is_bipartition, verify_antimagic
from antimagic.mindegree import (
    MIN_DEGREE_THRESHOLD,
    antimagic_orientation_mindegree,
    build_theorem2_plan,
    check_theorem2_plan,
    max_bipartite_spanning,
)
from antimagic.models import Graph, Verdict, ViolationKind


def _assert_half_kept(graph, cut):
    for v in range(graph.vertex_count):
        assert 2 * cut.L.degree(v) >= graph.degree(v)


@pytest.mark.parametrize(
    "graph",
    [
        Graph.from_networkx(nx.complete_bipartite_graph(3, 3)),
        Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)]),
        Graph.from_networkx(nx.complete_graph(4)),
        Graph.from_networkx(nx.petersen_graph()),
    ],
)
def test_max_bipartite_spanning(graph):
    """Test every vertex keeps at least half its edges across the cut."""
    cut = max_bipartite_spanning(graph)
    _assert_half_kept(graph, cut)
    assert all(cut.side[u] != cut.side[v] for u, v in cut.L.edges)
    assert [graph.edges[i] for i in cut.edge_map] == list(cut.L.edges)


def test_max_bipartite_spanning_bipartite_keeps_everything(k33):
    """Test a bipartite graph loses no edge."""
    cut = max_bipartite_spanning(k33)
    assert cut.cut_size == k33.edge_count


def test_max_bipartite_spanning_restarts(petersen):
    """Test that restarts never give a smaller cut and are reproducible."""
    plain = max_bipartite_spanning(petersen)
    first = max_bipartite_spanning(petersen, seed=5, restarts=4)
    second = max_bipartite_spanning(petersen, seed=5, restarts=4)
    assert first.cut_size >= plain.cut_size
    assert first.side == second.side


def test_plan_k34(k34):
    """Test the layer invariants on K34."""
    plan = build_theorem2_plan(k34)
    assert check_theorem2_plan(plan) is None
    assert is_bipartition(
        plan.cut.L,
        frozenset(v for v in range(34) if plan.cut.side[v] == 0),
        frozenset(v for v in range(34) if plan.cut.side[v] == 1),
    )
    assert not any(u in plan.st.T and v in plan.st.T for u, v in plan.cut.L.edges)
    assert all(plan.st.matching.saturates(x) for x in plan.st.S)
    assert plan.m1 + plan.m2 + plan.m3 + len(plan.st.T) == k34.edge_count
    g1 = set(plan.g1_edges)
    for y in plan.t_order:
        g1_degree = sum(1 for _, i in k34.adjacency[y] if i in g1)
        assert plan.c_values[y] == g1_degree % 4


def test_plan_refuses_low_degree(petersen):
    """Test a minimum degree below the threshold is a precondition error."""
    with pytest.raises(PreconditionError, match=str(MIN_DEGREE_THRESHOLD)) as excinfo:
        build_theorem2_plan(petersen)
    assert excinfo.value.vertex == 0


def test_unsafe_low_degree_fails_as_precondition(petersen, caplog):
    """Test unsafe mode warns and reports construction failures as preconditions."""
    with caplog.at_level(logging.WARNING, logger="antimagic.mindegree"):
        with pytest.raises(PreconditionError):
            antimagic_orientation_mindegree(petersen, unsafe=True)
    assert "Unsafe mode" in caplog.text


def test_check_theorem2_plan_detects_problems(k34):
    """Test the plan checker notices a missing layer edge."""
    plan = build_theorem2_plan(k34)
    broken = dataclasses.replace(plan, h2_edges=plan.h2_edges[1:])
    assert check_theorem2_plan(broken) is not None


def test_mindegree_k34(k34):
    """Test K34 gets an accepted certificate."""
    cert = antimagic_orientation_mindegree(k34)
    assert verify_antimagic(cert)
    assert sorted(cert.labeling.labels) == list(range(1, 562))
    assert cert.meta == {"pipeline": "mindegree", "unsafe": False}


@pytest.mark.slow
@pytest.mark.parametrize(
    "graph",
    [
        Graph.from_networkx(nx.complete_graph(35)),
        Graph.from_networkx(nx.complete_bipartite_graph(34, 36)),
    ],
)
def test_mindegree_dense(graph):
    """Test complete and complete bipartite graphs."""
    assert verify_antimagic(antimagic_orientation_mindegree(graph))


@pytest.mark.slow
def test_mindegree_near_regular():
    """Test a random 34-regular graph on 60 vertices."""
    graph = near_regular(60, 34, seed=11)
    assert graph.min_degree() == 34
    cert = antimagic_orientation_mindegree(graph, seed=11, restarts=2)
    assert verify_antimagic(cert)


def test_mindegree_middle_layers_cancel_on_t(k34):
    """Test the G2 and H2 labels add up to zero at every T vertex."""
    plan = build_theorem2_plan(k34)
    cert = antimagic_orientation_mindegree(k34)
    middle = set(plan.g2_edges) | set(plan.h2_edges)
    net = [0] * k34.vertex_count
    for index in middle:
        tail, head = cert.orientation.arc(k34, index)
        net[head] += cert.labeling.labels[index]
        net[tail] -= cert.labeling.labels[index]
    assert all(net[y] == 0 for y in plan.st.T)


def test_mindegree_separates_t_from_s(k34):
    """Test every T sum is below every S sum."""
    plan = build_theorem2_plan(k34)
    cert = antimagic_orientation_mindegree(k34)
    assert max(cert.sums[y] for y in plan.st.T) < min(cert.sums[x] for x in plan.st.S)


@pytest.mark.parametrize("unsafe, error", [(True, CounterexampleError), (False, InternalAssertionError)])
def test_rejected_certificate(monkeypatch, k34, unsafe, error):
    """Test how a rejected certificate is reported with and without unsafe mode."""
    monkeypatch.setattr(
        "antimagic.mindegree.verify_antimagic",
        lambda cert: Verdict.reject(ViolationKind.DUPLICATE_SUM, (0, 1), "forced"),
    )
    with pytest.raises(error) as excinfo:
        antimagic_orientation_mindegree(k34, unsafe=unsafe)
    if unsafe:
        assert excinfo.value.verdict.violation is ViolationKind.DUPLICATE_SUM
        assert excinfo.value.certificate.graph == k34
