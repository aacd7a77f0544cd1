"""
Data models for antimagic orientations.

Every model is immutable once built. Vertices are dense integer ids
``0..vertex_count-1``; edges are addressed by their index in ``Graph.edges``,
and orientations and labelings are tuples parallel to that list.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple

from .exceptions import MalformedInputError

Edge = Tuple[int, int]


def _build_adjacency(vertex_count: int, edges: Tuple[Edge, ...]) -> Tuple[Tuple[Edge, ...], ...]:
    adjacency: List[List[Edge]] = [[] for _ in range(vertex_count)]
    for index, (u, v) in enumerate(edges):
        adjacency[u].append((v, index))
        adjacency[v].append((u, index))
    return tuple(tuple(row) for row in adjacency)


def _check_endpoints(vertex_count: int, edges: Tuple[Edge, ...]) -> None:
    if vertex_count < 0:
        raise MalformedInputError(f"Vertex count must be non-negative, got {vertex_count}")
    for index, (u, v) in enumerate(edges):
        if not (0 <= u < vertex_count and 0 <= v < vertex_count):
            raise MalformedInputError(
                f"Edge {index} ({u}, {v}) has an endpoint outside [0, {vertex_count - 1}]"
            )
        if u == v:
            raise MalformedInputError(f"Edge {index} is a self-loop at vertex {u}")


@dataclass(frozen=True)
class Graph:
    """
    A simple undirected graph.

    ``adjacency[v]`` lists ``(neighbor, edge_index)`` pairs in edge order.
    """
    vertex_count: int
    edges: Tuple[Edge, ...]
    adjacency: Tuple[Tuple[Edge, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        _check_endpoints(self.vertex_count, edges)
        seen = set()
        for index, (u, v) in enumerate(edges):
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise MalformedInputError(f"Edge {index} duplicates the pair {key}")
            seen.add(key)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "adjacency", _build_adjacency(self.vertex_count, edges))

    def __str__(self) -> str:
        """String representation of the graph."""
        return f"Graph(n={self.vertex_count}, m={self.edge_count})"

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[Edge]) -> "Graph":
        """
        Create a Graph from any iterable of vertex pairs.

        Args:
            vertex_count: Number of vertices.
            edges: Unordered vertex pairs.

        Returns:
            A Graph instance.
        """
        return cls(vertex_count=vertex_count, edges=tuple(tuple(e) for e in edges))  # type: ignore[misc]

    @classmethod
    def from_networkx(cls, nx_graph: Any) -> "Graph":
        """
        Create a Graph from a networkx graph, relabeling nodes to ``0..n-1``.

        Nodes are numbered in sorted order when they are sortable, otherwise in
        insertion order.
        """
        nodes = list(nx_graph.nodes())
        try:
            nodes = sorted(nodes)
        except TypeError:
            pass
        index = {node: i for i, node in enumerate(nodes)}
        return cls.from_edges(len(nodes), ((index[u], index[v]) for u, v in nx_graph.edges()))

    def to_networkx(self) -> Any:
        """Return an equivalent ``networkx.Graph`` carrying each edge index as ``index``."""
        import networkx as nx

        nx_graph = nx.Graph()
        nx_graph.add_nodes_from(range(self.vertex_count))
        for index, (u, v) in enumerate(self.edges):
            nx_graph.add_edge(u, v, index=index)
        return nx_graph

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, vertex: int) -> int:
        return len(self.adjacency[vertex])

    def degrees(self) -> List[int]:
        return [len(row) for row in self.adjacency]

    def neighbors(self, vertex: int) -> List[int]:
        return [w for w, _ in self.adjacency[vertex]]

    def min_degree(self) -> int:
        """Smallest vertex degree, 0 for the empty vertex set."""
        return min(self.degrees(), default=0)

    def edge_subgraph(self, indices: Iterable[int]) -> "Graph":
        """
        Spanning subgraph keeping the given edges.

        Edge ``k`` of the result is edge ``indices[k]`` of this graph, so callers
        that need the parent index keep the list they passed in.
        """
        return Graph(vertex_count=self.vertex_count, edges=tuple(self.edges[i] for i in indices))


@dataclass(frozen=True)
class MultiGraph:
    """
    An undirected multigraph, used for the phantom-augmented graph of a trail
    decomposition.

    ``phantom[i]`` marks edges added to pair up odd-degree vertices.
    """
    vertex_count: int
    edges: Tuple[Edge, ...]
    phantom: Tuple[bool, ...]

    def __post_init__(self) -> None:
        _check_endpoints(self.vertex_count, self.edges)
        if len(self.phantom) != len(self.edges):
            raise MalformedInputError("MultiGraph needs one phantom flag per edge")

    def to_networkx(self) -> Any:
        """Return a ``networkx.MultiGraph`` keyed by edge index."""
        import networkx as nx

        nx_graph = nx.MultiGraph()
        nx_graph.add_nodes_from(range(self.vertex_count))
        for index, (u, v) in enumerate(self.edges):
            nx_graph.add_edge(u, v, key=index)
        return nx_graph


@dataclass(frozen=True)
class Orientation:
    """
    Direction of every edge. ``forward[i]`` is True when edge ``(u, v)`` is the
    arc ``u -> v``.
    """
    forward: Tuple[bool, ...]

    @classmethod
    def from_tails(cls, graph: Graph, tails: List[int]) -> "Orientation":
        """Build an orientation from the tail vertex chosen for every edge."""
        if len(tails) != graph.edge_count:
            raise MalformedInputError(
                f"Orientation has {len(tails)} tails for {graph.edge_count} edges"
            )
        forward = []
        for index, ((u, v), tail) in enumerate(zip(graph.edges, tails)):
            if tail not in (u, v):
                raise MalformedInputError(f"Vertex {tail} is not an endpoint of edge {index}")
            forward.append(tail == u)
        return cls(forward=tuple(forward))

    def arc(self, graph: Graph, index: int) -> Edge:
        """Return ``(tail, head)`` of edge ``index``."""
        u, v = graph.edges[index]
        return (u, v) if self.forward[index] else (v, u)


@dataclass(frozen=True)
class Labeling:
    """
    A label for every edge. ``declared`` is the label set the labeling is meant
    to use; when omitted it is ``{1..m}``.
    """
    labels: Tuple[int, ...]
    declared: Optional[FrozenSet[int]] = None

    @property
    def label_set(self) -> FrozenSet[int]:
        if self.declared is not None:
            return self.declared
        return frozenset(range(1, len(self.labels) + 1))


class ViolationKind(str, Enum):
    """Reasons a verdict can reject."""
    DUPLICATE_LABEL = "duplicate-label"
    LABEL_OUT_OF_RANGE = "label-out-of-range"
    DUPLICATE_SUM = "duplicate-sum"
    SUM_MISMATCH = "sum-mismatch"
    SIZE_MISMATCH = "size-mismatch"
    NOT_A_PARTITION = "not-a-partition"
    NONZERO_RESIDUE = "nonzero-residue"
    LABEL_SET_MISMATCH = "label-set-mismatch"
    SUM_OUT_OF_BOUNDS = "sum-out-of-bounds"
    INEXACT_SUM = "inexact-sum"


@dataclass(frozen=True)
class Verdict:
    """
    Outcome of a verification. A rejection names the first violation found and
    the vertices, edges or parts that witness it.
    """
    accepted: bool
    violation: Optional[ViolationKind] = None
    witness: Tuple[int, ...] = ()
    message: str = ""

    def __bool__(self) -> bool:
        return self.accepted

    def __str__(self) -> str:
        """String representation of the verdict."""
        if self.accepted:
            return "accept"
        return f"reject: {self.violation.value if self.violation else 'unknown'} {self.message}".strip()

    @classmethod
    def accept(cls) -> "Verdict":
        return cls(accepted=True)

    @classmethod
    def reject(cls, violation: ViolationKind, witness: Iterable[int], message: str) -> "Verdict":
        return cls(accepted=False, violation=violation, witness=tuple(witness), message=message)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "accepted": self.accepted,
            "violation": self.violation.value if self.violation else None,
            "witness": list(self.witness),
            "message": self.message,
        }


@dataclass(frozen=True)
class Certificate:
    """
    An oriented, labeled graph together with its oriented vertex sums.

    ``meta`` records how the certificate was produced (pipeline, case, seed).
    """
    graph: Graph
    orientation: Orientation
    labeling: Labeling
    sums: Tuple[int, ...]
    meta: Dict[str, Any] = field(default_factory=dict, compare=False)

    @classmethod
    def from_parts(
        cls,
        graph: Graph,
        orientation: Orientation,
        labeling: Labeling,
        meta: Optional[Dict[str, Any]] = None,
    ) -> "Certificate":
        """
        Create a Certificate, computing the oriented vertex sums.

        Args:
            graph: The underlying graph.
            orientation: Direction of every edge.
            labeling: Label of every edge.
            meta: Provenance information.

        Returns:
            A Certificate instance.
        """
        from .graph import oriented_vertex_sums

        sums = oriented_vertex_sums(graph, orientation, labeling)
        return cls(
            graph=graph,
            orientation=orientation,
            labeling=labeling,
            sums=tuple(sums[v] for v in range(graph.vertex_count)),
            meta=dict(meta or {}),
        )

    def arcs(self) -> Iterator[Tuple[int, int, int]]:
        """Yield ``(tail, head, label)`` for every edge in index order."""
        for index, label in enumerate(self.labeling.labels):
            tail, head = self.orientation.arc(self.graph, index)
            yield tail, head, label


@dataclass(frozen=True)
class ResiduePartition:
    """
    A partition of ``{1..n}`` whose part sums vanish modulo ``modulus``
    (``n + 1`` for even ``n``, ``n`` for odd ``n``).
    """
    n: int
    modulus: int
    parts: Tuple[FrozenSet[int], ...]

    def __str__(self) -> str:
        """String representation of the partition."""
        body = ", ".join("{" + ",".join(map(str, sorted(p))) + "}" for p in self.parts)
        return f"{body} (mod {self.modulus})"


@dataclass(frozen=True)
class Trail:
    """
    A walk without repeated edges: ``vertices`` has one more entry than
    ``edges`` and edge ``edges[k]`` joins ``vertices[k]`` and ``vertices[k+1]``.
    """
    vertices: Tuple[int, ...]
    edges: Tuple[int, ...]

    @property
    def closed(self) -> bool:
        return self.vertices[0] == self.vertices[-1]

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    def reversed(self) -> "Trail":
        return Trail(vertices=self.vertices[::-1], edges=self.edges[::-1])


@dataclass(frozen=True)
class TrailDecomposition:
    """Edge-disjoint trails covering every edge of a graph, open trails first."""
    trails: Tuple[Trail, ...]

    @property
    def open_flags(self) -> Tuple[bool, ...]:
        return tuple(not t.closed for t in self.trails)

    def edge_sequence(self) -> List[int]:
        """All edge indices in traversal order."""
        return [e for t in self.trails for e in t.edges]


@dataclass(frozen=True)
class Matching:
    """
    A set of pairwise disjoint edges. ``mate`` maps every saturated vertex to
    its partner and ``edge_at`` to the matching edge covering it.
    """
    edges: FrozenSet[int]
    mate: Dict[int, int]
    edge_at: Dict[int, int]

    def __len__(self) -> int:
        return len(self.edges)

    @classmethod
    def from_edges(cls, graph: Graph, indices: Iterable[int]) -> "Matching":
        mate: Dict[int, int] = {}
        edge_at: Dict[int, int] = {}
        for index in indices:
            u, v = graph.edges[index]
            if u in mate or v in mate:
                raise MalformedInputError(f"Edge {index} shares a vertex with another matching edge")
            mate[u], mate[v] = v, u
            edge_at[u] = edge_at[v] = index
        return cls(edges=frozenset(edge_at.values()), mate=mate, edge_at=edge_at)

    def saturates(self, vertex: int) -> bool:
        return vertex in self.mate


@dataclass(frozen=True)
class STPartition:
    """
    ``V = S + T`` with ``T`` independent and a matching between ``S`` and ``T``
    that saturates ``S``.
    """
    S: FrozenSet[int]
    T: FrozenSet[int]
    matching: Matching


@dataclass(frozen=True)
class StructureTrace:
    """
    The intermediate sets of one component's S/T construction.

    ``a_layers[i]`` and ``b_layers[i]`` are the alternating layers grown from
    the unsaturated vertices of the smaller side; ``c0`` and ``d0`` are grown
    from the unsaturated vertices of the larger side.
    """
    x_side: FrozenSet[int]
    y_side: FrozenSet[int]
    x0: FrozenSet[int]
    y0: FrozenSet[int]
    a_layers: Tuple[FrozenSet[int], ...] = ()
    b_layers: Tuple[FrozenSet[int], ...] = ()
    c0: FrozenSet[int] = frozenset()
    d0: FrozenSet[int] = frozenset()
    x_rest: FrozenSet[int] = frozenset()
    y_rest: FrozenSet[int] = frozenset()

    @property
    def saturated(self) -> bool:
        """True when the matching already covered the whole smaller side."""
        return not self.x0


@dataclass(frozen=True)
class CutPartition:
    """
    A two-sided vertex split and the spanning bipartite subgraph ``L`` of its
    crossing edges. ``L`` edge ``k`` is edge ``edge_map[k]`` of the source graph.
    """
    side: Tuple[int, ...]
    L: Graph
    edge_map: Tuple[int, ...]

    @property
    def cut_size(self) -> int:
        return self.L.edge_count


class CaseTag(str, Enum):
    """Which labeling branch of the bipartite construction applies."""
    CASE1 = "Case1"
    CASE21 = "Case21"
    CASE22 = "Case22"
    DEGENERATE = "Degenerate"


@dataclass(frozen=True)
class Theorem1Plan:
    """
    Everything the bipartite labelers need.

    ``t_order`` lists T with degree-1 vertices last; ``groups[i]`` holds the H
    edges (graph indices) at ``t_order[i]`` for the vertices of degree at
    least 3. ``mstar_extra`` maps each unsaturated T vertex to its chosen edge.
    """
    graph: Graph
    st: STPartition
    t_order: Tuple[int, ...]
    s_edges: Tuple[int, ...]
    h_edges: Tuple[int, ...]
    mstar_extra: Dict[int, int]
    groups: Tuple[Tuple[int, ...], ...]
    case: CaseTag
    k: int = 0
    ell: int = 0

    @property
    def n1(self) -> int:
        return len(self.st.S)

    @property
    def n2(self) -> int:
        return len(self.st.T)

    @property
    def m1(self) -> int:
        return len(self.s_edges)

    @property
    def m2(self) -> int:
        return len(self.h_edges)

    @property
    def t1(self) -> int:
        return sum(1 for y in self.st.T if self.graph.degree(y) == 1)


@dataclass(frozen=True)
class Theorem2Plan:
    """
    Everything the minimum-degree labeler needs. Edge collections hold indices
    of the source graph.

    ``groups[i]`` holds the H1 edges at ``t_order[i]``; ``c_values`` maps each
    T vertex to its G1 degree mod 4.
    """
    graph: Graph
    cut: CutPartition
    st: STPartition
    t_order: Tuple[int, ...]
    mstar_extra: Dict[int, int]
    h_edges: Tuple[int, ...]
    g1_edges: Tuple[int, ...]
    g2_edges: Tuple[int, ...]
    moved_edges: Tuple[int, ...]
    h1_edges: Tuple[int, ...]
    h2_edges: Tuple[int, ...]
    groups: Tuple[Tuple[int, ...], ...]
    c_values: Dict[int, int]

    @property
    def m1(self) -> int:
        return len(self.h1_edges)

    @property
    def m2(self) -> int:
        return len(self.g2_edges)

    @property
    def m3(self) -> int:
        return len(self.h2_edges)


class OracleStatus(str, Enum):
    """Outcome of an exhaustive search."""
    EXISTS = "exists"
    NOT_EXISTS = "not-exists"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class OracleResult:
    """Result of the brute-force search, with a witness when one was found."""
    status: OracleStatus
    explored: int
    witness: Optional[Certificate] = None

    @property
    def exists(self) -> bool:
        return self.status is OracleStatus.EXISTS

    def __str__(self) -> str:
        """String representation of the result."""
        return f"{self.status.value} (explored {self.explored})"
