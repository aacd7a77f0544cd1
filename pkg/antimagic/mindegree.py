"""
Antimagic orientations of graphs with minimum degree at least 33.

A locally maximum cut gives a spanning bipartite subgraph ``L`` in which every
vertex keeps at least half its degree. ``L`` is split into ``S`` and an
independent ``T``. The edges are then spread over five labeled layers:

* ``H1``: zero-residue groups at each T vertex, pointed into S,
* ``G2``: consecutive labels, exactly ``d/2`` at every T vertex,
* ``H2``: even-T labels, exactly ``-d`` at every T vertex,
* ``M*`` minus ``M``, pointed into S,
* ``M``, labeled in increasing order of the partial S sums.

The ``G2`` and ``H2`` contributions cancel at every T vertex, so T sums are
decided by ``H1`` and ``M*`` alone.
"""

import logging
from typing import Dict, List, Optional, Set, Tuple

import numpy as np

from .bipartite import LabelBuilder, label_matching_last
from .exceptions import (
    CounterexampleError,
    InternalAssertionError,
    PreconditionError,
)
from .graph import check_size, verify_antimagic
from .matching import extend_to_mstar, st_partition
from .models import Certificate, CutPartition, Graph, Matching, STPartition, Theorem2Plan
from .partition import residue_partition
from .trails import consecutive_labeling, teven_labeling

logger = logging.getLogger(__name__)

# Smallest minimum degree the construction is proven for
MIN_DEGREE_THRESHOLD = 33

PIPELINE_NAME = "mindegree"


def _local_search(graph: Graph, side: List[int]) -> Tuple[List[int], int]:
    crossing = [0] * graph.vertex_count
    for u, v in graph.edges:
        if side[u] != side[v]:
            crossing[u] += 1
            crossing[v] += 1
    moves = 0
    improved = True
    while improved:
        improved = False
        for v in range(graph.vertex_count):
            if 2 * crossing[v] >= graph.degree(v):
                continue
            side[v] = 1 - side[v]
            crossing[v] = graph.degree(v) - crossing[v]
            for w, _ in graph.adjacency[v]:
                crossing[w] += 1 if side[w] != side[v] else -1
            moves += 1
            improved = True
    return side, moves


def _cut_from_sides(graph: Graph, side: List[int]) -> CutPartition:
    edge_map = tuple(i for i, (u, v) in enumerate(graph.edges) if side[u] != side[v])
    return CutPartition(side=tuple(side), L=graph.edge_subgraph(edge_map), edge_map=edge_map)


def max_bipartite_spanning(
    graph: Graph, seed: Optional[int] = None, restarts: int = 0
) -> CutPartition:
    """
    Find a cut where every vertex has at least half its neighbors across.

    The search starts from the split by vertex-id parity and moves any vertex
    with too few crossing edges to the other side until none is left. With
    ``restarts``, that many extra runs start from random splits drawn from
    ``seed`` and the largest cut wins.

    Args:
        graph: The graph to cut.
        seed: Seed for the random restarts.
        restarts: Number of random restarts.

    Returns:
        The CutPartition.
    """
    starts = [[v % 2 for v in range(graph.vertex_count)]]
    if restarts:
        rng = np.random.default_rng(seed)
        for _ in range(restarts):
            starts.append([int(b) for b in rng.integers(0, 2, size=graph.vertex_count)])

    best: Optional[CutPartition] = None
    for start in starts:
        side, moves = _local_search(graph, list(start))
        cut = _cut_from_sides(graph, side)
        logger.debug(f"Local search: {moves} moves, cut of {cut.cut_size} edges")
        if best is None or cut.cut_size > best.cut_size:
            best = cut
    assert best is not None
    for v in range(graph.vertex_count):
        if 2 * best.L.degree(v) < graph.degree(v):
            raise InternalAssertionError(f"Vertex {v} keeps fewer than half its edges in the cut")
    return best


def _edges_at(graph: Graph, vertex: int, allowed: Set[int]) -> List[int]:
    return sorted(i for _, i in graph.adjacency[vertex] if i in allowed)


def build_theorem2_plan(
    graph: Graph, unsafe: bool = False, seed: Optional[int] = None, restarts: int = 0
) -> Theorem2Plan:
    """
    Compute the layers the minimum-degree labeler works from.

    Args:
        graph: A graph with minimum degree at least 33.
        unsafe: Skip the degree threshold. A construction step that then
            fails raises PreconditionError instead of InternalAssertionError.
        seed: Seed for the cut search restarts.
        restarts: Number of random cut search restarts.

    Returns:
        The Theorem2Plan; every edge collection holds indices of ``graph``.

    Raises:
        PreconditionError: If the minimum degree is below the threshold and
            ``unsafe`` is not set.
    """
    check_size(graph)
    delta = graph.min_degree()
    if delta < MIN_DEGREE_THRESHOLD:
        if not unsafe:
            low = graph.degrees().index(delta) if graph.vertex_count else None
            raise PreconditionError(
                f"Minimum degree {delta} is below {MIN_DEGREE_THRESHOLD}", vertex=low
            )
        logger.warning(f"Unsafe mode: minimum degree {delta} is below {MIN_DEGREE_THRESHOLD}")
    failure = PreconditionError if unsafe else InternalAssertionError

    cut = max_bipartite_spanning(graph, seed=seed, restarts=restarts)
    L = cut.L
    local_st = st_partition(L)
    matching = Matching.from_edges(graph, [cut.edge_map[i] for i in local_st.matching.edges])
    st = STPartition(S=local_st.S, T=local_st.T, matching=matching)
    lstar_local = [i for i, (u, v) in enumerate(L.edges) if not (u in st.S and v in st.S)]
    lstar = L.edge_subgraph(lstar_local)
    to_graph = [cut.edge_map[i] for i in lstar_local]
    try:
        mstar_local = extend_to_mstar(lstar, st)
    except PreconditionError as e:
        raise failure(f"Cannot extend the matching: {e}") from e
    mstar = {y: to_graph[i] for y, i in mstar_local.items()}
    mstar_edges = set(mstar.values())

    h_edges = {i for i in to_graph if i not in mstar_edges}
    g1_edges = {i for i in range(graph.edge_count) if i not in h_edges and i not in mstar_edges}
    t_order = tuple(sorted(st.T))

    c_values: Dict[int, int] = {}
    moved: Set[int] = set()
    h2: Set[int] = set()
    for y in t_order:
        g1_degree = sum(1 for _, i in graph.adjacency[y] if i in g1_edges)
        c = g1_degree % 4
        c_values[y] = c
        available = _edges_at(graph, y, h_edges)
        if len(available) < 4 - c:
            raise failure(f"Vertex {y} has only {len(available)} H edges to move")
        moved.update(available[: 4 - c])
        g2_degree = g1_degree + 4 - c
        rest = available[4 - c :]
        if len(rest) < g2_degree // 2 + 2:
            raise failure(f"Vertex {y} has too few H edges left to split")
        h2.update(rest[: g2_degree // 2])

    g2_edges = g1_edges | moved
    h1_edges = h_edges - moved - h2
    groups = tuple(tuple(_edges_at(graph, y, h1_edges)) for y in t_order)
    plan = Theorem2Plan(
        graph=graph,
        cut=cut,
        st=st,
        t_order=t_order,
        mstar_extra={y: e for y, e in mstar.items() if not st.matching.saturates(y)},
        h_edges=tuple(sorted(h_edges)),
        g1_edges=tuple(sorted(g1_edges)),
        g2_edges=tuple(sorted(g2_edges)),
        moved_edges=tuple(sorted(moved)),
        h1_edges=tuple(sorted(h1_edges)),
        h2_edges=tuple(sorted(h2)),
        groups=groups,
        c_values=c_values,
    )
    problem = check_theorem2_plan(plan)
    if problem:
        raise failure(f"Minimum-degree plan is invalid: {problem}")
    logger.debug(
        f"Minimum-degree plan: |S|={len(st.S)}, |T|={len(st.T)}, "
        f"m1={plan.m1}, m2={plan.m2}, m3={plan.m3}"
    )
    return plan


def check_theorem2_plan(plan: Theorem2Plan) -> Optional[str]:
    """Return a description of the first broken plan invariant, or None."""
    graph, st = plan.graph, plan.st
    if plan.m1 + plan.m2 + plan.m3 + len(st.T) != graph.edge_count:
        return "layers do not account for every edge"
    g2, h1, h2 = set(plan.g2_edges), set(plan.h1_edges), set(plan.h2_edges)
    for y in plan.t_order:
        g2_at = _edges_at(graph, y, g2)
        if len(g2_at) % 4:
            return f"vertex {y} has G2 degree {len(g2_at)}, not divisible by 4"
        if not any(w in st.S for w, i in graph.adjacency[y] if i in g2):
            return f"vertex {y} has no G2 neighbor in S"
        if 2 * len(_edges_at(graph, y, h2)) != len(g2_at):
            return f"vertex {y} has H2 degree other than half its G2 degree"
        if len(_edges_at(graph, y, h1)) < 2:
            return f"vertex {y} has fewer than 2 H1 edges"
    return None


def antimagic_orientation_mindegree(
    graph: Graph, unsafe: bool = False, seed: Optional[int] = None, restarts: int = 0
) -> Certificate:
    """
    Construct an antimagic orientation of a graph with minimum degree >= 33.

    Args:
        graph: The graph.
        unsafe: Run below the degree threshold; a rejected result then raises
            CounterexampleError.
        seed: Seed for the cut search restarts.
        restarts: Number of random cut search restarts.

    Returns:
        A certificate that passes ``verify_antimagic``.

    Raises:
        PreconditionError: If the minimum degree is too low and ``unsafe`` is off.
        CounterexampleError: If an unsafe run yields a rejected certificate.
    """
    plan = build_theorem2_plan(graph, unsafe=unsafe, seed=seed, restarts=restarts)
    st = plan.st
    m1, m2, m3 = plan.m1, plan.m2, plan.m3
    builder = LabelBuilder(graph)

    partition = residue_partition(m1, [len(group) for group in plan.groups])
    for group, part in zip(plan.groups, partition.parts):
        for index, label in zip(group, sorted(part)):
            builder.from_t(index, label, st.T)
    h1_sums = builder.partial_sums()

    g2 = graph.edge_subgraph(plan.g2_edges)
    orientation, labeling = consecutive_labeling(g2, p=m1, exact_set=st.T)
    builder.embed(plan.g2_edges, orientation, labeling)

    h2 = graph.edge_subgraph(plan.h2_edges)
    orientation, labeling, delta = teven_labeling(h2, st.S, st.T, p=m1 + m2)
    builder.embed(plan.h2_edges, orientation, labeling)

    cancelled = builder.partial_sums()
    for y in plan.t_order:
        if cancelled[y] != h1_sums[y]:
            raise InternalAssertionError(f"G2 and H2 do not cancel at vertex {y}")

    # What is left is m1+m2+m3+1..m, or m1+m2+m3 and m1+m2+m3+2..m when H2 skipped a label.
    used = set(builder.labels)
    remaining = [label for label in range(m1 + m2 + 1, graph.edge_count + 1) if label not in used]
    extra = [y for y in plan.t_order if y in plan.mstar_extra]
    for y, label in zip(extra, remaining):
        builder.assign(plan.mstar_extra[y], label, y)
    ordered = label_matching_last(builder, st, remaining[len(extra) :])
    logger.debug(f"Minimum-degree labeling: largest H2 label {delta}")

    cert = builder.certificate({"pipeline": PIPELINE_NAME, "unsafe": unsafe})
    verdict = verify_antimagic(cert)
    if not verdict:
        if unsafe:
            raise CounterexampleError(f"Certificate rejected: {verdict}", cert, verdict)
        raise InternalAssertionError(f"Minimum-degree certificate rejected: {verdict}")

    t_max = max(cert.sums[y] for y in st.T) if st.T else None
    s_min = min(cert.sums[x] for x in ordered) if ordered else None
    if t_max is not None and s_min is not None and t_max >= s_min:
        raise InternalAssertionError("An S sum does not exceed every T sum")
    return cert
