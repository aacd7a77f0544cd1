"""
Graph-core operations: oriented vertex sums, the antimagic verifier and
breadth-first bipartition.
"""

import logging
from collections import deque
from typing import Dict, FrozenSet, List, Optional, Tuple

from .exceptions import MalformedInputError, NotBipartiteError, PreconditionError
from .models import Certificate, Graph, Labeling, Orientation, Verdict, ViolationKind

logger = logging.getLogger(__name__)

# Largest edge count the pipelines accept; keeps every sum below m(m+1)/2 < 2**63
MAX_EDGES = 2**30


def check_size(graph: Graph) -> None:
    """Reject graphs too large for the pipelines' sum range."""
    if graph.edge_count > MAX_EDGES:
        raise PreconditionError(f"Graph has {graph.edge_count} edges, more than {MAX_EDGES}")


def _raw_sums(graph: Graph, orientation: Orientation, labels: Tuple[int, ...]) -> List[int]:
    sums = [0] * graph.vertex_count
    for (u, v), forward, label in zip(graph.edges, orientation.forward, labels):
        if forward:
            sums[v] += label
            sums[u] -= label
        else:
            sums[u] += label
            sums[v] -= label
    return sums


def oriented_vertex_sums(
    graph: Graph, orientation: Orientation, labeling: Labeling
) -> Dict[int, int]:
    """
    Compute the oriented sum at every vertex.

    The oriented sum at ``v`` is the total label on arcs entering ``v`` minus
    the total label on arcs leaving it. Isolated vertices get 0.

    Args:
        graph: The underlying graph.
        orientation: Direction of every edge.
        labeling: Label of every edge.

    Returns:
        A mapping from every vertex to its oriented sum.

    Raises:
        MalformedInputError: If an edge has no label or direction, or two edges
            share a label.
    """
    m = graph.edge_count
    if len(labeling.labels) != m:
        raise MalformedInputError(f"Labeling covers {len(labeling.labels)} of {m} edges")
    if len(orientation.forward) != m:
        raise MalformedInputError(f"Orientation covers {len(orientation.forward)} of {m} edges")
    if len(set(labeling.labels)) != m:
        raise MalformedInputError("Labeling assigns the same label to two edges")
    return dict(enumerate(_raw_sums(graph, orientation, labeling.labels)))


def _first_duplicate(values: List[int]) -> Optional[Tuple[int, int]]:
    first: Dict[int, int] = {}
    for index, value in enumerate(values):
        if value in first:
            return first[value], index
        first[value] = index
    return None


def verify_antimagic(cert: Certificate) -> Verdict:
    """
    Check that a certificate is an antimagic orientation.

    The labeling must be a bijection onto ``{1..m}`` and the recomputed
    oriented sums must be pairwise distinct. The first violation is reported
    with its witness: two edge indices for a duplicate label, one edge index
    for an out-of-range label, two vertices for a duplicate sum.

    Args:
        cert: The certificate to check.

    Returns:
        The verdict.
    """
    graph = cert.graph
    labels = cert.labeling.labels
    m = graph.edge_count
    if len(labels) != m or len(cert.orientation.forward) != m:
        raise MalformedInputError("Certificate does not label and orient every edge exactly once")

    duplicate = _first_duplicate(list(labels))
    if duplicate is not None:
        e, f = duplicate
        return Verdict.reject(
            ViolationKind.DUPLICATE_LABEL, duplicate, f"edges {e} and {f} share label {labels[e]}"
        )
    for index, label in enumerate(labels):
        if not 1 <= label <= m:
            return Verdict.reject(
                ViolationKind.LABEL_OUT_OF_RANGE,
                (index,),
                f"edge {index} has label {label} outside [1, {m}]",
            )

    sums = _raw_sums(graph, cert.orientation, labels)
    duplicate = _first_duplicate(sums)
    if duplicate is not None:
        u, v = duplicate
        return Verdict.reject(
            ViolationKind.DUPLICATE_SUM, duplicate, f"vertices {u} and {v} both have sum {sums[u]}"
        )
    return Verdict.accept()


def _tree_path(parent: List[int], vertex: int) -> List[int]:
    path = [vertex]
    while parent[path[-1]] != -1:
        path.append(parent[path[-1]])
    return path


def bipartition(graph: Graph) -> Tuple[FrozenSet[int], FrozenSet[int]]:
    """
    Two-color every component by breadth-first search.

    Each component's lowest vertex id goes to ``X``.

    Args:
        graph: The graph to color.

    Returns:
        The sides ``(X, Y)``.

    Raises:
        NotBipartiteError: If an odd cycle exists; the error carries it as a
            closed vertex sequence.
    """
    n = graph.vertex_count
    color = [-1] * n
    parent = [-1] * n
    for root in range(n):
        if color[root] != -1:
            continue
        color[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w, _ in graph.adjacency[u]:
                if color[w] == -1:
                    color[w] = 1 - color[u]
                    parent[w] = u
                    queue.append(w)
                elif color[w] == color[u]:
                    cycle = _odd_cycle(parent, u, w)
                    raise NotBipartiteError(f"Graph has an odd cycle through {u} and {w}", cycle)
    x_side = frozenset(v for v in range(n) if color[v] == 0)
    y_side = frozenset(v for v in range(n) if color[v] == 1)
    return x_side, y_side


def _odd_cycle(parent: List[int], u: int, w: int) -> List[int]:
    path_u = _tree_path(parent, u)
    path_w = _tree_path(parent, w)
    on_w = set(path_w)
    meet = next(v for v in path_u if v in on_w)
    left = path_u[: path_u.index(meet) + 1]
    right = path_w[: path_w.index(meet)]
    cycle = left + right[::-1]
    return cycle + [cycle[0]]


def is_bipartition(graph: Graph, x_side: FrozenSet[int], y_side: FrozenSet[int]) -> bool:
    """True when ``(x_side, y_side)`` splits the vertices and every edge crosses."""
    if x_side & y_side or len(x_side) + len(y_side) != graph.vertex_count:
        return False
    return all((u in x_side) != (v in x_side) for u, v in graph.edges)
