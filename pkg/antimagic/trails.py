"""
Trail decompositions and the two trail-based labelings.

``consecutive_labeling`` numbers the edges ``p+1..p+m`` along the trails and
points every arc against the walk, so each pass through a vertex adds +1 to
its sum. ``teven_labeling`` handles a bipartite graph whose ``T`` side has
even degrees: every pass through a ``T`` vertex enters on one label and
leaves on a label two higher, pinning ``T`` sums to ``-d``.
"""

import logging
from typing import Collection, Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from .exceptions import InternalAssertionError, StructuralError
from .graph import oriented_vertex_sums
from .models import (
    Graph,
    Labeling,
    MultiGraph,
    Orientation,
    Trail,
    TrailDecomposition,
    Verdict,
    ViolationKind,
)

logger = logging.getLogger(__name__)


def augment_odd_vertices(graph: Graph) -> MultiGraph:
    """
    Add one phantom edge per pair of odd-degree vertices.

    Odd vertices are paired in ascending id order, so every vertex of the
    result has even degree.
    """
    odd = [v for v in range(graph.vertex_count) if graph.degree(v) % 2 == 1]
    phantoms = list(zip(odd[0::2], odd[1::2]))
    return MultiGraph(
        vertex_count=graph.vertex_count,
        edges=graph.edges + tuple(phantoms),
        phantom=(False,) * graph.edge_count + (True,) * len(phantoms),
    )


def _split_at_phantoms(
    vertices: List[int], edges: List[int], phantom: Tuple[bool, ...]
) -> List[Trail]:
    # Rotate the circuit to begin right after a phantom edge.
    first = next(k for k, e in enumerate(edges) if phantom[e])
    length = len(edges)
    order = [(first + 1 + k) % length for k in range(length)]
    walk = [vertices[k] for k in order] + [vertices[order[0]]]
    steps = [edges[k] for k in order]

    trails = []
    current_vertices = [walk[0]]
    current_edges: List[int] = []
    for k, e in enumerate(steps):
        if phantom[e]:
            if current_edges:
                trails.append(Trail(tuple(current_vertices), tuple(current_edges)))
            current_vertices, current_edges = [walk[k + 1]], []
        else:
            current_edges.append(e)
            current_vertices.append(walk[k + 1])
    if current_edges:
        trails.append(Trail(tuple(current_vertices), tuple(current_edges)))
    return trails


def trail_decomposition(graph: Graph, avoid: Collection[int] = ()) -> TrailDecomposition:
    """
    Cover the edges of a graph by edge-disjoint trails.

    Open trails run between odd-degree vertices, one trail per pair, and every
    all-even component becomes one closed trail. No trail starts or ends in
    ``avoid``. Open trails come first, ordered by their smaller endpoint, then
    closed trails ordered by their smallest vertex.

    Args:
        graph: The graph to decompose.
        avoid: Vertices that may only be passed through.

    Returns:
        The TrailDecomposition.

    Raises:
        StructuralError: If a vertex in ``avoid`` has odd degree, or a component
            with edges lies entirely inside ``avoid``.
    """
    avoid = frozenset(avoid)
    for v in sorted(avoid):
        if graph.degree(v) % 2:
            raise StructuralError(f"Vertex {v} must not end a trail but has odd degree", vertex=v)

    augmented = augment_odd_vertices(graph)
    nx_graph = augmented.to_networkx()
    open_trails: List[Trail] = []
    closed_trails: List[Trail] = []

    for component in nx.connected_components(nx_graph):
        members = sorted(component)
        if nx_graph.degree(members[0]) == 0:
            continue
        start = next((v for v in members if v not in avoid), None)
        if start is None:
            raise StructuralError(
                f"Component of vertex {members[0]} has no vertex outside the avoided set",
                vertex=members[0],
            )
        circuit = list(nx.eulerian_circuit(nx_graph.subgraph(members), source=start, keys=True))
        vertices = [u for u, _, _ in circuit]
        edges = [key for _, _, key in circuit]
        if any(augmented.phantom[e] for e in edges):
            open_trails.extend(_split_at_phantoms(vertices, edges, augmented.phantom))
        else:
            closed_trails.append(Trail(tuple(vertices) + (start,), tuple(edges)))

    open_trails.sort(key=lambda t: min(t.start, t.end))
    closed_trails.sort(key=lambda t: min(t.vertices))
    logger.debug(f"Trail decomposition: {len(open_trails)} open, {len(closed_trails)} closed")
    return TrailDecomposition(trails=tuple(open_trails + closed_trails))


def check_trail_decomposition(
    graph: Graph, decomposition: TrailDecomposition, avoid: Collection[int] = ()
) -> Optional[str]:
    """Return a description of the first broken trail invariant, or None."""
    avoid = frozenset(avoid)
    sequence = decomposition.edge_sequence()
    if sorted(sequence) != list(range(graph.edge_count)):
        return "trails do not use every edge exactly once"
    open_ends: Dict[int, int] = {}
    for number, trail in enumerate(decomposition.trails):
        for k, e in enumerate(trail.edges):
            if set(graph.edges[e]) != {trail.vertices[k], trail.vertices[k + 1]}:
                return f"trail {number} step {k} does not follow edge {e}"
        if trail.start in avoid or trail.end in avoid:
            return f"trail {number} ends in the avoided set"
        if not trail.closed:
            for v in (trail.start, trail.end):
                if graph.degree(v) % 2 == 0:
                    return f"open trail {number} ends at even vertex {v}"
                open_ends[v] = open_ends.get(v, 0) + 1
    odd = [v for v in range(graph.vertex_count) if graph.degree(v) % 2]
    if any(open_ends.get(v) != 1 for v in odd):
        return "some odd vertex is not the end of exactly one open trail"
    return None


def _lower_bound(degree: int) -> int:
    return (degree - 1) // 2


def _check_sum_bounds(
    graph: Graph, sums: Dict[int, int], vertices: Collection[int], slack: int
) -> Optional[Verdict]:
    for v in sorted(vertices):
        degree = graph.degree(v)
        if degree == 0:
            if sums[v] != 0:
                return Verdict.reject(
                    ViolationKind.SUM_OUT_OF_BOUNDS, (v,), f"isolated vertex {v} has sum {sums[v]}"
                )
            continue
        centre = _lower_bound(degree)
        if not centre - slack <= sums[v] <= centre + slack:
            return Verdict.reject(
                ViolationKind.SUM_OUT_OF_BOUNDS,
                (v,),
                f"vertex {v} has sum {sums[v]} outside {centre} +/- {slack}",
            )
    return None


def _check_label_set(labeling: Labeling, expected: FrozenSet[int]) -> Optional[Verdict]:
    if len(labeling.labels) != len(expected) or set(labeling.labels) != expected:
        return Verdict.reject(
            ViolationKind.LABEL_SET_MISMATCH, (), "labels differ from the expected label set"
        )
    return None


def _check_consecutive_precondition(graph: Graph, exact_set: FrozenSet[int]) -> None:
    for v in sorted(exact_set):
        if graph.degree(v) % 2:
            raise StructuralError(f"Vertex {v} needs an exact sum but has odd degree", vertex=v)
        if all(w in exact_set for w in graph.neighbors(v)):
            raise StructuralError(
                f"Vertex {v} needs an exact sum but has no neighbor outside the exact set",
                vertex=v,
            )


def consecutive_labeling(
    graph: Graph, p: int = 0, exact_set: Collection[int] = ()
) -> Tuple[Orientation, Labeling]:
    """
    Orient and label a graph with ``p+1..p+m`` keeping sums near ``d/2``.

    Every vertex ``v`` ends with a sum within ``p + m`` of
    ``floor((d(v) - 1) / 2)``, and every vertex of ``exact_set`` ends with
    exactly ``d(v) / 2``.

    Args:
        graph: The graph to label.
        p: Offset of the label range.
        exact_set: Vertices whose sums must be exactly half their degree.

    Returns:
        The orientation and labeling.

    Raises:
        StructuralError: If a vertex of ``exact_set`` has odd degree or no
            neighbor outside the set.
    """
    exact_set = frozenset(exact_set)
    _check_consecutive_precondition(graph, exact_set)
    decomposition = trail_decomposition(graph, avoid=exact_set)

    tails = [0] * graph.edge_count
    labels = [0] * graph.edge_count
    label = p
    for trail in decomposition.trails:
        for k, e in enumerate(trail.edges):
            label += 1
            labels[e] = label
            tails[e] = trail.vertices[k + 1]
    orientation = Orientation.from_tails(graph, tails)
    labeling = Labeling(tuple(labels), frozenset(range(p + 1, p + graph.edge_count + 1)))

    verdict = check_consecutive_contract(graph, p, exact_set, orientation, labeling)
    if not verdict:
        raise InternalAssertionError(f"Consecutive labeling broke its contract: {verdict}")
    return orientation, labeling


def check_consecutive_contract(
    graph: Graph,
    p: int,
    exact_set: Collection[int],
    orientation: Orientation,
    labeling: Labeling,
) -> Verdict:
    """
    Check the postconditions of ``consecutive_labeling``.

    The labels must be exactly ``p+1..p+m``, every sum must lie within
    ``p + m`` of ``floor((d - 1) / 2)`` and every vertex of ``exact_set`` must
    have sum ``d / 2``.
    """
    m = graph.edge_count
    rejected = _check_label_set(labeling, frozenset(range(p + 1, p + m + 1)))
    if rejected is not None:
        return rejected
    sums = oriented_vertex_sums(graph, orientation, labeling)
    rejected = _check_sum_bounds(graph, sums, range(graph.vertex_count), p + m)
    if rejected is not None:
        return rejected
    for v in sorted(exact_set):
        if 2 * sums[v] != graph.degree(v):
            return Verdict.reject(
                ViolationKind.INEXACT_SUM,
                (v,),
                f"vertex {v} has sum {sums[v]}, expected {graph.degree(v) // 2}",
            )
    return Verdict.accept()


def teven_delta(m: int, p: int = 0) -> int:
    """Largest label of an even-T labeling: ``p + m``, or ``p + m + 1`` when m = 2 mod 4."""
    return p + m + 1 if m % 4 == 2 else p + m


def teven_label_set(m: int, p: int = 0) -> FrozenSet[int]:
    """Labels of an even-T labeling: ``p+1..p+m-1`` plus the largest label."""
    return frozenset(range(p + 1, p + m)) | {teven_delta(m, p)}


def _pair_labels(position: int) -> int:
    # Trail edges pair up as (e_j, f_j); position counts from 0.
    j = position // 2 + 1
    i = (j + 1) // 2
    if position % 2 == 0:
        return 4 * i - 3 if j % 2 else 4 * i - 2
    return 4 * i - 1 if j % 2 else 4 * i


def _teven_assign(graph: Graph, trails: List[Trail], p: int) -> Tuple[Orientation, Labeling]:
    tails = [0] * graph.edge_count
    labels = [0] * graph.edge_count
    position = 0
    for trail in trails:
        for k, e in enumerate(trail.edges):
            labels[e] = p + _pair_labels(position)
            tails[e] = trail.vertices[k]
            position += 1
    labeling = Labeling(tuple(labels), teven_label_set(graph.edge_count, p))
    return Orientation.from_tails(graph, tails), labeling


def _check_teven_precondition(graph: Graph, s_side: FrozenSet[int], t_side: FrozenSet[int]) -> None:
    if s_side & t_side or len(s_side | t_side) != graph.vertex_count:
        raise StructuralError("S and T must split the vertex set")
    for index, (u, v) in enumerate(graph.edges):
        if (u in t_side) == (v in t_side):
            raise StructuralError(f"Edge {index} ({u}, {v}) does not join S and T", vertex=u)
    for y in sorted(t_side):
        if graph.degree(y) % 2:
            raise StructuralError(f"Vertex {y} of T has odd degree {graph.degree(y)}", vertex=y)
    if graph.edge_count == 0:
        raise StructuralError("Even-T labeling needs at least one edge")


def _teven_order(graph: Graph, trails: Sequence[Trail]) -> List[Trail]:
    # An open trail starting at x is safe when at most m - d(x) edges precede it.
    # Start at the lower-degree end and schedule by that deadline.
    opened = []
    for trail in trails:
        if trail.closed:
            continue
        if (graph.degree(trail.end), trail.end) < (graph.degree(trail.start), trail.start):
            trail = trail.reversed()
        opened.append(trail)
    opened.sort(key=lambda t: len(t.edges) - graph.degree(t.start))
    return opened + [t for t in trails if t.closed]


def _teven_repairs(trails: List[Trail], k: int) -> Iterator[List[Trail]]:
    yield trails[:k] + [trails[k].reversed()] + trails[k + 1 :]
    rest = trails[:k] + trails[k + 1 :]
    yield [trails[k]] + rest
    yield [trails[k].reversed()] + rest


def teven_labeling(
    graph: Graph, s_side: Collection[int], t_side: Collection[int], p: int = 0
) -> Tuple[Orientation, Labeling, int]:
    """
    Label a bipartite graph whose T side has even degrees.

    Trails start and end in S. Along the trails the edges pair up as
    ``(e_j, f_j)`` around a T vertex; ``e_j`` points into T and ``f_j`` out of
    it, and ``f_j`` carries a label two above ``e_j``. Each T vertex therefore
    ends with sum ``-d``.

    Only the start of an open trail can fall outside its sum bound, and only
    when its first label is large. Open trails start at their lower-degree end
    and are ordered by how many edges may precede them. If a start still falls
    outside its bound, its trail is reversed or moved to the front and the
    labels are reassigned.

    Args:
        graph: A bipartite graph with sides ``s_side`` and ``t_side``.
        s_side: The side trails start and end on.
        t_side: The side whose vertices all have even degree.
        p: Offset of the label range.

    Returns:
        The orientation, the labeling and the largest label.

    Raises:
        StructuralError: If the graph is not bipartite across (S, T), a T vertex
            has odd degree, or there are no edges.
    """
    s_side = frozenset(s_side)
    t_side = frozenset(t_side)
    _check_teven_precondition(graph, s_side, t_side)

    trails = _teven_order(graph, trail_decomposition(graph, avoid=t_side).trails)
    delta = teven_delta(graph.edge_count, p)
    seen = {tuple(trails)}
    for _ in range(4 * len(trails) + 1):
        orientation, labeling = _teven_assign(graph, trails, p)
        verdict = check_teven_contract(graph, s_side, t_side, p, orientation, labeling)
        if verdict:
            return orientation, labeling, delta
        culprit = verdict.witness[0] if verdict.witness else None
        moved = next(
            (k for k, t in enumerate(trails) if not t.closed and t.start == culprit), None
        )
        if verdict.violation is not ViolationKind.SUM_OUT_OF_BOUNDS or moved is None:
            break
        repaired = next(
            (c for c in _teven_repairs(trails, moved) if tuple(c) not in seen), None
        )
        if repaired is None:
            break
        logger.debug(f"Even-T labeling: reordering the trail starting at {culprit}")
        seen.add(tuple(repaired))
        trails = repaired
    raise InternalAssertionError(f"Even-T labeling broke its contract: {verdict}")


def check_teven_contract(
    graph: Graph,
    s_side: Collection[int],
    t_side: Collection[int],
    p: int,
    orientation: Orientation,
    labeling: Labeling,
) -> Verdict:
    """
    Check the postconditions of ``teven_labeling``.

    The labels must be ``p+1..p+m-1`` plus the largest label ``delta``, every T
    vertex must have sum ``-d`` and every S vertex a sum within ``delta`` of
    ``floor((d - 1) / 2)``.
    """
    m = graph.edge_count
    rejected = _check_label_set(labeling, teven_label_set(m, p))
    if rejected is not None:
        return rejected
    sums = oriented_vertex_sums(graph, orientation, labeling)
    for y in sorted(t_side):
        if sums[y] != -graph.degree(y):
            return Verdict.reject(
                ViolationKind.INEXACT_SUM,
                (y,),
                f"vertex {y} of T has sum {sums[y]}, expected {-graph.degree(y)}",
            )
    rejected = _check_sum_bounds(graph, sums, s_side, teven_delta(m, p))
    return rejected if rejected is not None else Verdict.accept()
