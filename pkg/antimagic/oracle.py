"""
Exhaustive search for antimagic orientations of tiny graphs.

Used as independent ground truth for the constructions: it shares nothing
with them except the verifier that checks its witnesses.
"""

import logging
from typing import List, Optional, Set

from .exceptions import BudgetExceededError, InternalAssertionError, PreconditionError
from .graph import verify_antimagic
from .models import Certificate, Graph, Labeling, OracleResult, OracleStatus, Orientation

logger = logging.getLogger(__name__)

# Largest edge count the oracle accepts
ORACLE_MAX_EDGES = 10

# Search nodes visited before giving up
DEFAULT_ORACLE_BUDGET = 5_000_000


class _Search:
    """Depth-first labeling search for one fixed orientation."""

    def __init__(self, graph: Graph, budget: int, explored: int):
        self.graph = graph
        self.budget = budget
        self.explored = explored
        self.m = graph.edge_count
        # Vertices whose last incident edge is edge k.
        self.closing: List[List[int]] = [[] for _ in range(self.m)]
        for v, row in enumerate(graph.adjacency):
            if row:
                self.closing[max(i for _, i in row)].append(v)

    def run(self, forward: List[bool]) -> Optional[List[int]]:
        self.forward = forward
        self.labels = [0] * self.m
        self.sums = [0] * self.graph.vertex_count
        isolated = sum(1 for row in self.graph.adjacency if not row)
        if isolated > 1:
            return None
        final: Set[int] = {0} if isolated else set()
        return self._extend(0, 0, final)

    def _extend(self, k: int, used: int, final: Set[int]) -> Optional[List[int]]:
        self.explored += 1
        if self.explored > self.budget:
            raise BudgetExceededError("Oracle budget exhausted", explored=self.explored)
        if k == self.m:
            return list(self.labels)
        u, v = self.graph.edges[k]
        tail, head = (u, v) if self.forward[k] else (v, u)
        for label in range(1, self.m + 1):
            bit = 1 << label
            if used & bit:
                continue
            self.labels[k] = label
            self.sums[head] += label
            self.sums[tail] -= label
            closed = [self.sums[w] for w in self.closing[k]]
            if len(set(closed)) == len(closed) and not final.intersection(closed):
                found = self._extend(k + 1, used | bit, final.union(closed))
                if found is not None:
                    return found
            self.sums[head] -= label
            self.sums[tail] += label
        self.labels[k] = 0
        return None


def brute_force_antimagic(graph: Graph, budget: int = DEFAULT_ORACLE_BUDGET) -> OracleResult:
    """
    Search every orientation and labeling for an antimagic one.

    Orientations are visited in Gray-code order; for each, labels are placed
    edge by edge and a branch is cut as soon as two vertices whose edges are
    all labeled share a sum.

    Args:
        graph: A graph with at most ``ORACLE_MAX_EDGES`` edges.
        budget: Search nodes to visit before answering inconclusive.

    Returns:
        The OracleResult; NOT_EXISTS only after the search space is exhausted.

    Raises:
        PreconditionError: If the graph has too many edges.
    """
    m = graph.edge_count
    if m > ORACLE_MAX_EDGES:
        raise PreconditionError(f"Oracle handles at most {ORACLE_MAX_EDGES} edges, got {m}")

    search = _Search(graph, budget, 0)
    try:
        for step in range(2**m):
            code = step ^ (step >> 1)
            forward = [bool(code >> j & 1) for j in range(m)]
            labels = search.run(forward)
            if labels is None:
                continue
            witness = Certificate.from_parts(
                graph,
                Orientation(tuple(forward)),
                Labeling(tuple(labels)),
                {"pipeline": "oracle"},
            )
            if not verify_antimagic(witness):
                raise InternalAssertionError("Oracle witness failed verification")
            return OracleResult(OracleStatus.EXISTS, search.explored, witness)
    except BudgetExceededError as e:
        logger.debug(f"Oracle gave up after {e.explored} nodes")
        return OracleResult(OracleStatus.INCONCLUSIVE, e.explored)
    return OracleResult(OracleStatus.NOT_EXISTS, search.explored)
