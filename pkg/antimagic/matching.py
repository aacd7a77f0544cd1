"""
Bipartite matchings and the S/T structure built on them.

``st_partition`` splits the vertices of a bipartite graph into ``S`` and an
independent set ``T`` together with a matching that saturates ``S``. When the
maximum matching misses part of the smaller side, alternating layers grown
from the unsaturated vertices decide which matched vertices move to ``T``.
"""

import logging
from collections import deque
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from networkx.algorithms.bipartite import hopcroft_karp_matching

from .exceptions import InternalAssertionError, StructuralError
from .graph import bipartition, is_bipartition
from .models import Graph, Matching, STPartition, StructureTrace

logger = logging.getLogger(__name__)


def _edge_between(graph: Graph, u: int, v: int) -> Optional[int]:
    for w, index in graph.adjacency[u]:
        if w == v:
            return index
    return None


def maximum_matching(graph: Graph, x_side: Iterable[int], y_side: Iterable[int]) -> Matching:
    """
    Find a maximum matching of a bipartite graph with Hopcroft-Karp.

    Args:
        graph: The graph.
        x_side: One side of a bipartition.
        y_side: The other side.

    Returns:
        The Matching.

    Raises:
        StructuralError: If ``(x_side, y_side)`` is not a bipartition of the graph.
    """
    x_side = frozenset(x_side)
    y_side = frozenset(y_side)
    if not is_bipartition(graph, x_side, y_side):
        raise StructuralError("The given sides are not a bipartition of the graph")
    if graph.edge_count == 0:
        return Matching(edges=frozenset(), mate={}, edge_at={})
    nx_graph = graph.to_networkx()
    mate = hopcroft_karp_matching(nx_graph, top_nodes=sorted(x_side))
    indices = []
    for x in sorted(x_side):
        if x in mate:
            indices.append(nx_graph.edges[x, mate[x]]["index"])
    return Matching.from_edges(graph, indices)


def has_augmenting_path(
    graph: Graph, x_side: Iterable[int], y_side: Iterable[int], matching: Matching
) -> bool:
    """True when an M-augmenting path exists, i.e. the matching is not maximum."""
    x_side = frozenset(x_side)
    visited: Set[int] = set()
    queue = deque(x for x in sorted(x_side) if not matching.saturates(x))
    visited.update(queue)
    while queue:
        x = queue.popleft()
        for y, index in graph.adjacency[x]:
            if index in matching.edges or y in visited:
                continue
            visited.add(y)
            if not matching.saturates(y):
                return True
            partner = matching.mate[y]
            if partner not in visited:
                visited.add(partner)
                queue.append(partner)
    return False


def _components(graph: Graph) -> List[List[int]]:
    seen = [False] * graph.vertex_count
    components = []
    for root in range(graph.vertex_count):
        if seen[root]:
            continue
        seen[root] = True
        members = [root]
        stack = [root]
        while stack:
            u = stack.pop()
            for w, _ in graph.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    members.append(w)
                    stack.append(w)
        components.append(sorted(members))
    return components


def _oriented_sides(
    graph: Graph,
) -> Tuple[FrozenSet[int], FrozenSet[int], List[Tuple[FrozenSet[int], FrozenSet[int]]]]:
    # Per component the smaller side becomes X; ties go to the side of the lowest id.
    colour_x, colour_y = bipartition(graph)
    x_all: Set[int] = set()
    y_all: Set[int] = set()
    sides = []
    for members in _components(graph):
        first = frozenset(v for v in members if v in colour_x)
        second = frozenset(v for v in members if v in colour_y)
        if len(second) < len(first) or (len(second) == len(first) and min(members) in second):
            first, second = second, first
        x_all |= first
        y_all |= second
        sides.append((first, second))
    return frozenset(x_all), frozenset(y_all), sides


def _neighbours(graph: Graph, vertices: Iterable[int]) -> Set[int]:
    return {w for v in vertices for w, _ in graph.adjacency[v]}


def _component_structure(
    graph: Graph, x_side: FrozenSet[int], y_side: FrozenSet[int], matching: Matching
) -> Tuple[FrozenSet[int], FrozenSet[int], StructureTrace]:
    x0 = frozenset(x for x in x_side if not matching.saturates(x))
    y0 = frozenset(y for y in y_side if not matching.saturates(y))
    if not x0:
        trace = StructureTrace(x_side=x_side, y_side=y_side, x0=x0, y0=y0)
        return x_side, y_side, trace

    b_layers: List[FrozenSet[int]] = []
    a_layers: List[FrozenSet[int]] = []
    reached: Set[int] = set()
    frontier = _neighbours(graph, x0)
    while frontier:
        layer = frozenset(frontier - reached)
        if not layer:
            break
        if any(not matching.saturates(y) for y in layer):
            raise InternalAssertionError("Matching is not maximum: an alternating layer is unsaturated")
        reached |= layer
        b_layers.append(layer)
        a_layers.append(frozenset(matching.mate[y] for y in layer))
        frontier = _neighbours(graph, a_layers[-1])

    a_all = frozenset().union(*a_layers)
    b_all = frozenset().union(*b_layers)
    x1 = x_side - x0
    y1 = y_side - y0
    x_rest = x1 - a_all
    y_rest = y1 - b_all
    c0 = frozenset(_neighbours(graph, y0))
    d0 = frozenset(matching.mate[x] for x in c0)
    for i, layer in enumerate(a_layers):
        if _neighbours(graph, layer) & d0:
            raise InternalAssertionError(f"Layer A_{i} has an edge into D_0")

    s_side = b_all | x_rest
    t_side = a_all | y_rest | x0 | y0
    trace = StructureTrace(
        x_side=x_side,
        y_side=y_side,
        x0=x0,
        y0=y0,
        a_layers=tuple(a_layers),
        b_layers=tuple(b_layers),
        c0=c0,
        d0=d0,
        x_rest=x_rest,
        y_rest=y_rest,
    )
    return s_side, t_side, trace


def st_partition_with_trace(graph: Graph) -> Tuple[STPartition, List[StructureTrace]]:
    """
    Build the S/T partition and return the per-component construction sets.

    Args:
        graph: A bipartite graph.

    Returns:
        The STPartition and one StructureTrace per component.

    Raises:
        NotBipartiteError: If the graph has an odd cycle.
        InternalAssertionError: If the result breaks an STPartition invariant.
    """
    x_all, y_all, sides = _oriented_sides(graph)
    matching = maximum_matching(graph, x_all, y_all)
    s_side: Set[int] = set()
    t_side: Set[int] = set()
    traces = []
    for x_side, y_side in sides:
        s_part, t_part, trace = _component_structure(graph, x_side, y_side, matching)
        s_side |= s_part
        t_side |= t_part
        traces.append(trace)

    result = STPartition(S=frozenset(s_side), T=frozenset(t_side), matching=matching)
    problem = check_st_partition(graph, result)
    if problem:
        raise InternalAssertionError(f"S/T partition is invalid: {problem}")
    unsaturated = sum(1 for t in traces if not t.saturated)
    logger.debug(
        f"S/T partition: |S|={len(result.S)}, |T|={len(result.T)}, "
        f"{unsaturated} of {len(traces)} components needed alternating layers"
    )
    return result, traces


def st_partition(graph: Graph) -> STPartition:
    """
    Split a bipartite graph into ``S`` and an independent ``T``.

    The returned matching lies between ``S`` and ``T``, saturates ``S`` and has
    exactly ``|S|`` edges.
    """
    result, _ = st_partition_with_trace(graph)
    return result


def check_st_partition(graph: Graph, st: STPartition) -> Optional[str]:
    """Return a description of the first broken STPartition invariant, or None."""
    if st.S & st.T or len(st.S | st.T) != graph.vertex_count:
        return "S and T do not split the vertex set"
    for index, (u, v) in enumerate(graph.edges):
        if u in st.T and v in st.T:
            return f"edge {index} joins two vertices of T"
    for index in st.matching.edges:
        u, v = graph.edges[index]
        if (u in st.S) == (v in st.S):
            return f"matching edge {index} does not join S and T"
    unsaturated = [x for x in sorted(st.S) if not st.matching.saturates(x)]
    if unsaturated:
        return f"vertex {unsaturated[0]} of S is not saturated"
    if len(st.matching) != len(st.S):
        return f"matching has {len(st.matching)} edges for {len(st.S)} vertices of S"
    return None


def extend_to_mstar(graph: Graph, st: STPartition) -> Dict[int, int]:
    """
    Give every vertex of T exactly one edge of M*.

    A matched T vertex keeps its matching edge; an unsaturated one gets the
    edge to its lowest-id neighbor in S. The chosen edges may share S ends.

    Args:
        graph: The graph the edges are chosen from; it must contain M.
        st: The S/T partition.

    Returns:
        A mapping from each T vertex to the index of its M* edge in ``graph``.

    Raises:
        StructuralError: If an unsaturated T vertex has no neighbor in S, or a
            matching edge is missing from ``graph``.
    """
    mstar: Dict[int, int] = {}
    for y in sorted(st.T):
        if st.matching.saturates(y):
            index = _edge_between(graph, y, st.matching.mate[y])
            if index is None:
                raise StructuralError(f"Matching edge at {y} is not in the graph", vertex=y)
        else:
            choices = [(w, i) for w, i in graph.adjacency[y] if w in st.S]
            if not choices:
                raise StructuralError(f"Vertex {y} of T has no neighbor in S", vertex=y)
            index = min(choices)[1]
        mstar[y] = index
    return mstar
