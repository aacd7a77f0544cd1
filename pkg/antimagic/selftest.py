"""
A fast in-process acceptance sweep, run by ``antimagic selftest``.

Each check runs a small corpus through one construction and its checker.
"""

import logging
import time
from dataclasses import dataclass
from typing import Callable, Iterator, List, Optional, Set, Tuple

import networkx as nx
import numpy as np

from .bipartite import antimagic_orientation_bipartite
from .exceptions import AntimagicError
from .generators import complete, complete_bipartite, random_bipartite, star, tree_of_stars
from .graph import verify_antimagic
from .io import certificate_to_json
from .matching import check_st_partition, st_partition
from .mindegree import antimagic_orientation_mindegree
from .models import Graph
from .oracle import brute_force_antimagic
from .partition import residue_partition, verify_residue_partition
from .trails import (
    check_consecutive_contract,
    check_teven_contract,
    consecutive_labeling,
    teven_labeling,
)

logger = logging.getLogger(__name__)


@dataclass
class CheckResult:
    """Outcome of one self-test check."""
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def __str__(self) -> str:
        """String representation of the result."""
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: {self.detail} ({self.seconds:.2f}s)"


def part_size_lists(n: int, largest: Optional[int] = None) -> Iterator[List[int]]:
    """Yield every multiset of part sizes >= 2 summing to n, each in non-increasing order."""
    if n == 0:
        yield []
        return
    top = n if largest is None else min(n, largest)
    for first in range(top, 1, -1):
        for rest in part_size_lists(n - first, first):
            yield [first] + rest


def random_part_sizes(rng: np.random.Generator, n: int) -> List[int]:
    """Draw random part sizes >= 2 summing to n >= 2."""
    sizes = []
    left = n
    while left >= 4:
        size = int(rng.integers(2, left - 1))
        sizes.append(size)
        left -= size
    sizes.append(left)
    return sizes


def _bipartite_corpus(seed: int, count: int) -> List[Graph]:
    rng = np.random.default_rng(seed)
    graphs = [star(t) for t in (1, 3, 4, 5)] + [complete_bipartite(3, 3), complete_bipartite(3, 5)]
    while len(graphs) < count:
        nx_count, ny_count = (int(v) for v in rng.integers(6, 14, size=2))
        dmax = int(rng.integers(4, 7))
        graphs.append(random_bipartite(nx_count, ny_count, dmax, seed=int(rng.integers(2**31))))
    return graphs


def random_even_t_graph(rng: np.random.Generator) -> Tuple[Graph, Set[int], Set[int]]:
    """
    Draw a bipartite graph with sides S (low ids) and T whose T vertices all
    have even degree.

    Returns:
        The graph, S and T.
    """
    s_count = int(rng.integers(2, 10))
    t_count = int(rng.integers(1, 8))
    edges = []
    for y in range(s_count, s_count + t_count):
        half = int(rng.integers(1, s_count // 2 + 1))
        for x in rng.choice(s_count, size=2 * half, replace=False):
            edges.append((int(x), y))
    graph = Graph.from_edges(s_count + t_count, edges)
    return graph, set(range(s_count)), set(range(s_count, s_count + t_count))


def independent_even_set(graph: Graph) -> Set[int]:
    """Greedily pick an independent set of vertices with positive even degree."""
    chosen: Set[int] = set()
    for v in range(graph.vertex_count):
        degree = graph.degree(v)
        if degree and degree % 2 == 0 and not chosen.intersection(graph.neighbors(v)):
            chosen.add(v)
    return chosen


def check_bipartite(seed: int) -> str:
    """Run random and fixed bipartite graphs through the bipartite construction."""
    graphs = _bipartite_corpus(seed, 40) + [tree_of_stars(4, 3, seed=seed)]
    for graph in graphs:
        cert = antimagic_orientation_bipartite(graph)
        verdict = verify_antimagic(cert)
        if not verdict:
            raise AssertionError(f"{graph}: {verdict}")
    return f"{len(graphs)} graphs accepted"


def check_mindegree(seed: int) -> str:
    """Run K34, K35 and K34,34 through the minimum-degree construction."""
    graphs = [complete(34), complete(35), complete_bipartite(34, 34)]
    for graph in graphs:
        verdict = verify_antimagic(antimagic_orientation_mindegree(graph, seed=seed))
        if not verdict:
            raise AssertionError(f"{graph}: {verdict}")
    return f"{len(graphs)} graphs accepted"


def check_residue_partitions(seed: int) -> str:
    """Check every size multiset up to 10 and 100 random requests."""
    rng = np.random.default_rng(seed)
    requests = [(n, sizes) for n in range(2, 11) for sizes in part_size_lists(n)]
    for _ in range(100):
        n = int(rng.integers(2, 61))
        requests.append((n, random_part_sizes(rng, n)))
    for n, sizes in requests:
        verdict = verify_residue_partition(residue_partition(n, sizes), n, sizes)
        if not verdict:
            raise AssertionError(f"n={n}, sizes={sizes}: {verdict}")
    return f"{len(requests)} partitions accepted"


def check_consecutive(seed: int) -> str:
    """Check the consecutive labeling contract on random graphs."""
    rng = np.random.default_rng(seed)
    for _ in range(30):
        n = int(rng.integers(2, 14))
        graph = Graph.from_networkx(nx.gnp_random_graph(n, 0.4, seed=int(rng.integers(2**31))))
        exact = independent_even_set(graph)
        p = int(rng.integers(0, 20))
        orientation, labeling = consecutive_labeling(graph, p=p, exact_set=exact)
        verdict = check_consecutive_contract(graph, p, exact, orientation, labeling)
        if not verdict:
            raise AssertionError(f"{graph}: {verdict}")
    return "30 labelings within bounds"


def check_teven(seed: int) -> str:
    """Check the even-T labeling contract on random graphs."""
    rng = np.random.default_rng(seed)
    for _ in range(30):
        graph, s_side, t_side = random_even_t_graph(rng)
        p = int(rng.integers(0, 20))
        orientation, labeling, _ = teven_labeling(graph, s_side, t_side, p=p)
        verdict = check_teven_contract(graph, s_side, t_side, p, orientation, labeling)
        if not verdict:
            raise AssertionError(f"{graph}: {verdict}")
    return "30 labelings within bounds"


def check_st_partitions(seed: int) -> str:
    """Check S/T partitions of a random bipartite corpus."""
    graphs = _bipartite_corpus(seed + 1, 40)
    for graph in graphs:
        problem = check_st_partition(graph, st_partition(graph))
        if problem:
            raise AssertionError(f"{graph}: {problem}")
    return f"{len(graphs)} partitions valid"


def check_oracle(seed: int) -> str:
    """Check that the oracle and the bipartite construction agree on small graphs."""
    graphs = [star(t) for t in (1, 3, 4, 5, 6, 7)] + [tree_of_stars(2, 2, seed=seed)]
    for graph in graphs:
        result = brute_force_antimagic(graph)
        if not result.exists:
            raise AssertionError(f"{graph}: oracle says {result}")
        if not verify_antimagic(antimagic_orientation_bipartite(graph)):
            raise AssertionError(f"{graph}: construction rejected")
    return f"{len(graphs)} graphs agree"


def check_determinism(seed: int) -> str:
    """Check that certificates and the random generator repeat exactly."""
    graphs = _bipartite_corpus(seed + 2, 10)
    for graph in graphs:
        first = certificate_to_json(antimagic_orientation_bipartite(graph))
        second = certificate_to_json(antimagic_orientation_bipartite(graph))
        if first != second:
            raise AssertionError(f"{graph}: certificates differ between runs")
    again = random_bipartite(8, 8, 4, seed=seed)
    if again != random_bipartite(8, 8, 4, seed=seed):
        raise AssertionError("random generator is not reproducible")
    return f"{len(graphs)} certificates identical"


CHECKS: List[Tuple[str, Callable[[int], str]]] = [
    ("bipartite", check_bipartite),
    ("mindegree", check_mindegree),
    ("residue-partition", check_residue_partitions),
    ("consecutive-labeling", check_consecutive),
    ("even-t-labeling", check_teven),
    ("st-partition", check_st_partitions),
    ("oracle", check_oracle),
    ("determinism", check_determinism),
]


def run_selftest(seed: int = 0) -> List[CheckResult]:
    """
    Run every check.

    Args:
        seed: Seed for the random corpora.

    Returns:
        One CheckResult per check, in order.
    """
    results = []
    for name, check in CHECKS:
        start = time.perf_counter()
        try:
            detail = check(seed)
            passed = True
        except (AssertionError, AntimagicError) as e:
            logger.error(f"Self-test {name} failed: {e}")
            detail, passed = str(e), False
        results.append(CheckResult(name, passed, detail, time.perf_counter() - start))
    return results
