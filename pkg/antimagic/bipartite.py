"""
Antimagic orientations of bipartite graphs with no vertex of degree 0 or 2.

The graph is split into ``S`` and an independent ``T`` (see
``antimagic.matching``). Every edge at a T vertex points into ``S``, so T sums
are negative and S sums end up positive. The labels at each T vertex are
chosen so that T sums fall into distinct residue classes:

* the edges outside ``G[S]`` and ``M*`` (the graph ``H``) are labeled in
  zero-residue groups,
* the ``M*`` edges take distinct small labels,
* the matching ``M`` is labeled last, in increasing order of the partial S sums,
  which keeps S sums strictly increasing.
"""

import logging
from typing import Collection, Dict, List, Sequence, Tuple

from .exceptions import InternalAssertionError, PreconditionError
from .graph import bipartition, check_size, verify_antimagic
from .matching import extend_to_mstar, st_partition
from .models import (
    CaseTag,
    Certificate,
    Graph,
    Labeling,
    Orientation,
    STPartition,
    Theorem1Plan,
)
from .partition import residue_partition
from .trails import consecutive_labeling

logger = logging.getLogger(__name__)

PIPELINE_NAME = "bipartite"


def _check_degrees(graph: Graph) -> None:
    for v, degree in enumerate(graph.degrees()):
        if degree in (0, 2):
            raise PreconditionError(f"Vertex {v} has degree {degree}", vertex=v)


def _select_case(n2: int, m2: int, k: int, ell: int) -> CaseTag:
    if n2 <= m2:
        return CaseTag.CASE1
    if k + ell == 0:
        return CaseTag.DEGENERATE
    return CaseTag.CASE21 if k == 0 else CaseTag.CASE22


def plan_theorem1(graph: Graph) -> Theorem1Plan:
    """
    Compute the structure the bipartite labelers work from.

    Args:
        graph: A bipartite graph with no vertex of degree 0 or 2.

    Returns:
        The Theorem1Plan.

    Raises:
        PreconditionError: If a vertex has degree 0 or 2, or the graph is too large.
        NotBipartiteError: If the graph has an odd cycle.
    """
    check_size(graph)
    _check_degrees(graph)
    bipartition(graph)

    st = st_partition(graph)
    mstar = extend_to_mstar(graph, st)
    mstar_edges = set(mstar.values())
    s_edges = tuple(i for i, (u, v) in enumerate(graph.edges) if u in st.S and v in st.S)
    in_s = set(s_edges)
    h_edges = tuple(i for i in range(graph.edge_count) if i not in in_s and i not in mstar_edges)

    heavy = sorted(y for y in st.T if graph.degree(y) > 1)
    leaves = sorted(y for y in st.T if graph.degree(y) == 1)
    t_order = tuple(heavy + leaves)

    h_set = set(h_edges)
    groups = tuple(
        tuple(sorted(i for _, i in graph.adjacency[y] if i in h_set)) for y in heavy
    )
    for y, group in zip(heavy, groups):
        if len(group) != graph.degree(y) - 1:
            raise InternalAssertionError(f"Vertex {y} of T has {len(group)} H edges")

    m2 = len(h_edges)
    k = sum(1 for group in groups if len(group) % 2)
    ell = (m2 - 3 * k) // 2
    case = _select_case(len(st.T), m2, k, ell)
    plan = Theorem1Plan(
        graph=graph,
        st=st,
        t_order=t_order,
        s_edges=s_edges,
        h_edges=h_edges,
        mstar_extra={y: e for y, e in mstar.items() if not st.matching.saturates(y)},
        groups=groups,
        case=case,
        k=k,
        ell=ell,
    )
    if plan.m1 + plan.m2 + plan.n2 != graph.edge_count:
        raise InternalAssertionError("Plan does not account for every edge")
    logger.debug(
        f"Bipartite plan: n1={plan.n1}, n2={plan.n2}, m1={plan.m1}, m2={plan.m2}, "
        f"t1={plan.t1}, k={k}, ell={ell}, case={case.value}"
    )
    return plan


class LabelBuilder:
    """Accumulates labels and tails for the edges of one graph."""

    def __init__(self, graph: Graph):
        self.graph = graph
        self.labels = [0] * graph.edge_count
        self.tails = [-1] * graph.edge_count

    def assign(self, index: int, label: int, tail: int) -> None:
        self.labels[index] = label
        self.tails[index] = tail

    def from_t(self, index: int, label: int, t_side: Collection[int]) -> None:
        u, v = self.graph.edges[index]
        self.assign(index, label, u if u in t_side else v)

    def embed(self, indices: Sequence[int], orientation: Orientation, labeling: Labeling) -> None:
        sub = self.graph.edge_subgraph(indices)
        for k, index in enumerate(indices):
            tail, _ = orientation.arc(sub, k)
            self.assign(index, labeling.labels[k], tail)

    def partial_sums(self) -> List[int]:
        sums = [0] * self.graph.vertex_count
        for (u, v), label, tail in zip(self.graph.edges, self.labels, self.tails):
            if tail < 0:
                continue
            head = v if tail == u else u
            sums[head] += label
            sums[tail] -= label
        return sums

    def certificate(self, meta: Dict[str, object]) -> Certificate:
        orientation = Orientation.from_tails(self.graph, self.tails)
        return Certificate.from_parts(self.graph, orientation, Labeling(tuple(self.labels)), meta)


def _label_extra_mstar(builder: LabelBuilder, plan: Theorem1Plan, labels: Sequence[int]) -> None:
    extra = [y for y in plan.t_order if y in plan.mstar_extra]
    for y, label in zip(extra, labels):
        builder.assign(plan.mstar_extra[y], label, y)


def label_matching_last(builder: LabelBuilder, st: STPartition, labels: Sequence[int]) -> List[int]:
    """
    Label the matching in increasing order of the partial S sums.

    The S vertex with the ``i``-th smallest partial sum (ties by id) gets the
    ``i``-th smallest of ``labels`` on its matching edge, pointed into S.

    Returns:
        S in the order used.
    """
    sums = builder.partial_sums()
    ordered = sorted(st.S, key=lambda x: (sums[x], x))
    for x, label in zip(ordered, sorted(labels)):
        builder.assign(st.matching.edge_at[x], label, st.matching.mate[x])
    return ordered


def _embed_s_graph(builder: LabelBuilder, plan: Theorem1Plan, p: int) -> None:
    if not plan.s_edges:
        return
    sub = plan.graph.edge_subgraph(plan.s_edges)
    orientation, labeling = consecutive_labeling(sub, p=p)
    builder.embed(plan.s_edges, orientation, labeling)


def _finish(builder: LabelBuilder, plan: Theorem1Plan, ordered_s: List[int]) -> Certificate:
    cert = builder.certificate({"pipeline": PIPELINE_NAME, "case": plan.case.value})
    verdict = verify_antimagic(cert)
    if not verdict:
        raise InternalAssertionError(f"Bipartite certificate ({plan.case.value}) rejected: {verdict}")
    _check_separation(cert, plan.st.T, ordered_s)
    return cert


def _check_separation(cert: Certificate, t_side: Collection[int], ordered_s: List[int]) -> None:
    sums = cert.sums
    t_max = max((sums[y] for y in t_side), default=None)
    if t_max is not None and t_max >= 0:
        raise InternalAssertionError(f"A vertex of T has non-negative sum {t_max}")
    s_sums = [sums[x] for x in ordered_s]
    if any(a >= b for a, b in zip(s_sums, s_sums[1:])):
        raise InternalAssertionError("S sums are not strictly increasing in matching order")
    if s_sums and t_max is not None and s_sums[0] <= t_max:
        raise InternalAssertionError("An S sum does not exceed every T sum")


def label_case1(plan: Theorem1Plan) -> Certificate:
    """
    Label a plan with ``n2 <= m2`` (or ``m2 = 0``).

    H edges take the labels ``1..m2`` in zero-residue groups, ``G[S]`` takes
    the next ``m1``, then the unsaturated T edges of M*, then M.
    """
    if plan.case not in (CaseTag.CASE1, CaseTag.DEGENERATE):
        raise InternalAssertionError(f"label_case1 cannot label a {plan.case.value} plan")
    graph, st = plan.graph, plan.st
    builder = LabelBuilder(graph)
    m1, m2, n1, n2 = plan.m1, plan.m2, plan.n1, plan.n2

    if m2:
        partition = residue_partition(m2, [len(group) for group in plan.groups])
        for group, part in zip(plan.groups, partition.parts):
            for index, label in zip(group, sorted(part)):
                builder.from_t(index, label, st.T)
    _embed_s_graph(builder, plan, p=m2)
    _label_extra_mstar(builder, plan, range(m1 + m2 + 1, m1 + m2 + n2 - n1 + 1))
    ordered = label_matching_last(
        builder, st, range(m1 + m2 + n2 - n1 + 1, m1 + m2 + n2 + 1)
    )
    return _finish(builder, plan, ordered)


def _pair_blocks(groups: Sequence[Sequence[int]]) -> List[Tuple[int, int]]:
    return [(group[j], group[j + 1]) for group in groups for j in range(0, len(group), 2)]


def label_case21(plan: Theorem1Plan) -> Certificate:
    """
    Label a plan with ``n2 > m2`` where every H group has even size.

    Each pair block ``i`` gets ``m1 + n2 + i`` and ``m - i + 1``, so every
    group sum is a multiple of ``m + m1 + n2 + 1``.
    """
    if plan.case is not CaseTag.CASE21:
        raise InternalAssertionError(f"label_case21 cannot label a {plan.case.value} plan")
    graph, st = plan.graph, plan.st
    builder = LabelBuilder(graph)
    m, m1, n1, n2 = graph.edge_count, plan.m1, plan.n1, plan.n2

    _embed_s_graph(builder, plan, p=0)
    for i, (first, second) in enumerate(_pair_blocks(plan.groups), start=1):
        builder.from_t(first, m1 + n2 + i, st.T)
        builder.from_t(second, m - (i - 1), st.T)
    _label_extra_mstar(builder, plan, range(m1 + 1, m1 + n2 - n1 + 1))
    ordered = label_matching_last(builder, st, range(m1 + n2 - n1 + 1, m1 + n2 + 1))
    return _finish(builder, plan, ordered)


def label_case22(plan: Theorem1Plan) -> Certificate:
    """
    Label a plan with ``n2 > m2`` where some H group has odd size.

    Odd groups open with a triple block, all other edges form pair blocks.
    Triple ``i`` gets ``i``, ``m1 + k + i`` and ``m - 2i + 2``; pair ``i``
    gets ``m1 + 3k + i`` and ``m - 2k + 2 - i``. Every block sums to
    ``m + m1 + k + 2``. The ``n2`` labels left over go to M* and then M.
    """
    if plan.case is not CaseTag.CASE22:
        raise InternalAssertionError(f"label_case22 cannot label a {plan.case.value} plan")
    graph, st = plan.graph, plan.st
    builder = LabelBuilder(graph)
    m, m1, n2, k, ell = graph.edge_count, plan.m1, plan.n2, plan.k, plan.ell

    odd_groups = [g for g in plan.groups if len(g) % 2]
    even_groups = [g for g in plan.groups if len(g) % 2 == 0]
    _embed_s_graph(builder, plan, p=k)

    block_sum = m + m1 + k + 2
    for i, group in enumerate(odd_groups, start=1):
        triple = (i, m1 + k + i, m - 2 * i + 2)
        if sum(triple) != block_sum:
            raise InternalAssertionError(f"Triple block {i} sums to {sum(triple)}")
        for index, label in zip(group[:3], triple):
            builder.from_t(index, label, st.T)
    pairs = _pair_blocks([g[3:] for g in odd_groups] + even_groups)
    if len(pairs) != ell:
        raise InternalAssertionError(f"Expected {ell} pair blocks, built {len(pairs)}")
    for i, (first, second) in enumerate(pairs, start=1):
        builder.from_t(first, m1 + 3 * k + i, st.T)
        builder.from_t(second, m - 2 * k + 2 - i, st.T)

    used = set(builder.labels)
    unused = [label for label in range(1, m + 1) if label not in used]
    if len(unused) != n2:
        raise InternalAssertionError(f"{len(unused)} labels left for {n2} vertices of T")
    extra_count = len(plan.mstar_extra)
    _label_extra_mstar(builder, plan, unused[:extra_count])
    ordered = label_matching_last(builder, st, unused[extra_count:])
    return _finish(builder, plan, ordered)


def antimagic_orientation_bipartite(graph: Graph) -> Certificate:
    """
    Construct an antimagic orientation of a bipartite graph.

    Args:
        graph: A bipartite graph with no vertex of degree 0 or 2.

    Returns:
        A certificate that passes ``verify_antimagic``.

    Raises:
        PreconditionError: If a vertex has degree 0 or 2.
        NotBipartiteError: If the graph has an odd cycle.
    """
    plan = plan_theorem1(graph)
    if plan.case is CaseTag.CASE21:
        return label_case21(plan)
    if plan.case is CaseTag.CASE22:
        return label_case22(plan)
    return label_case1(plan)
