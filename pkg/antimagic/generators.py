"""
Graph families used as inputs for the constructions.

All randomness comes from ``numpy.random.default_rng(seed)``, so a family,
its parameters and a seed always produce the same graph.
"""

import logging
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import networkx as nx
import numpy as np

from .exceptions import PreconditionError
from .models import Graph

logger = logging.getLogger(__name__)

# Attempts at drawing a valid random graph before giving up
GENERATOR_MAX_RETRIES = 1000


class Family(str, Enum):
    """Graph families the generator knows."""
    COMPLETE = "complete"
    COMPLETE_BIPARTITE = "complete-bipartite"
    STAR = "star"
    RANDOM_BIPARTITE = "random-bipartite"
    NEAR_REGULAR = "near-regular"
    HYPERCUBE = "hypercube"
    TREE_OF_STARS = "tree-of-stars"


def complete(n: int) -> Graph:
    """The complete graph K_n."""
    if n < 1:
        raise PreconditionError(f"Complete graph needs n >= 1, got {n}")
    return Graph.from_networkx(nx.complete_graph(n))


def complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b}; vertices ``0..a-1`` form the first side."""
    if a < 1 or b < 1:
        raise PreconditionError(f"Complete bipartite graph needs a, b >= 1, got {a}, {b}")
    return Graph.from_networkx(nx.complete_bipartite_graph(a, b))


def star(t: int) -> Graph:
    """The star K_{1,t} with center 0."""
    if t < 1:
        raise PreconditionError(f"Star needs t >= 1, got {t}")
    return Graph.from_networkx(nx.star_graph(t))


def hypercube(k: int) -> Graph:
    """The k-dimensional hypercube Q_k."""
    if k < 1:
        raise PreconditionError(f"Hypercube needs k >= 1, got {k}")
    return Graph.from_networkx(nx.hypercube_graph(k))


def _allowed_degree(degree: int, cap: int) -> bool:
    return degree == 1 or 3 <= degree <= cap


def _draw_degrees(rng: np.random.Generator, count: int, cap: int) -> List[int]:
    choices = [1] + list(range(3, cap + 1))
    return [int(d) for d in rng.choice(choices, size=count)]


def _reachable(total: int, count: int, cap: int) -> bool:
    # Degree sums of `count` vertices with degrees in {1} + [3, cap].
    if cap < 3:
        return total == count
    if cap == 3:
        return count <= total <= 3 * count and (total - count) % 2 == 0
    return count <= total <= cap * count and total != count + 1


def _common_total(
    x_total: int, y_total: int, counts: Tuple[int, int], caps: Tuple[int, int]
) -> Optional[int]:
    # The total both sides can reach that lies closest to the mean of the drawn totals.
    (nx_count, ny_count), (x_cap, y_cap) = counts, caps
    lo = max(nx_count, ny_count)
    hi = min(nx_count * max(x_cap, 1), ny_count * max(y_cap, 1))
    middle = min(max((x_total + y_total) // 2, lo), hi)
    for offset in range(hi - lo + 1):
        for total in (middle - offset, middle + offset):
            if lo <= total <= hi and _reachable(total, nx_count, x_cap) and _reachable(
                total, ny_count, y_cap
            ):
                return total
    return None


def _balance(rng: np.random.Generator, degrees: List[int], target: int, cap: int) -> bool:
    # Nudge degrees up or down until they sum to target, staying in {1} + [3, cap].
    total = sum(degrees)
    for _ in range(GENERATOR_MAX_RETRIES * max(1, len(degrees))):
        if total == target:
            return True
        v = int(rng.integers(len(degrees)))
        d = degrees[v]
        if total < target:
            step = 2 if d == 1 else 1
        else:
            step = -2 if d == 3 else -1
        if _allowed_degree(d + step, cap):
            degrees[v] = d + step
            total += step
    return total == target


def _pair_stubs(
    rng: np.random.Generator, x_degrees: List[int], y_degrees: List[int]
) -> Optional[List[Tuple[int, int]]]:
    nx_count = len(x_degrees)
    x_stubs = [x for x, d in enumerate(x_degrees) for _ in range(d)]
    y_stubs = [nx_count + y for y, d in enumerate(y_degrees) for _ in range(d)]
    for _ in range(GENERATOR_MAX_RETRIES):
        order = rng.permutation(len(y_stubs))
        edges = [(x_stubs[i], y_stubs[j]) for i, j in enumerate(order)]
        if len(set(edges)) == len(edges):
            return sorted(edges)
    return None


def random_bipartite(nx_count: int, ny_count: int, dmax: int, seed: Optional[int] = None) -> Graph:
    """
    A random bipartite graph with every degree in ``{1} + [3, dmax]``.

    A degree sequence is drawn for each side. Both are balanced to the degree
    sum nearest their mean that either side can reach, then realized by random
    stub pairing; pairings with a repeated edge are drawn again.

    Args:
        nx_count: Size of the first side (vertices ``0..nx_count-1``).
        ny_count: Size of the second side.
        dmax: Largest allowed degree.
        seed: Seed for the random generator.

    Returns:
        The Graph.

    Raises:
        PreconditionError: If no degree sum fits both sides, or no valid graph
            was found within the retry limit.
    """
    if nx_count < 1 or ny_count < 1 or dmax < 1:
        raise PreconditionError("Random bipartite graph needs nx, ny, dmax >= 1")
    x_cap, y_cap = min(dmax, ny_count), min(dmax, nx_count)
    rng = np.random.default_rng(seed)
    for attempt in range(GENERATOR_MAX_RETRIES):
        x_degrees = _draw_degrees(rng, nx_count, x_cap)
        y_degrees = _draw_degrees(rng, ny_count, y_cap)
        target = _common_total(
            sum(x_degrees), sum(y_degrees), (nx_count, ny_count), (x_cap, y_cap)
        )
        if target is None:
            raise PreconditionError(
                f"No degree sum fits both sides of a random bipartite graph with "
                f"nx={nx_count}, ny={ny_count}, dmax={dmax}"
            )
        if not (
            _balance(rng, x_degrees, target, x_cap) and _balance(rng, y_degrees, target, y_cap)
        ):
            continue
        edges = _pair_stubs(rng, x_degrees, y_degrees)
        if edges is not None:
            if attempt:
                logger.debug(f"Random bipartite graph found after {attempt + 1} attempts")
            return Graph.from_edges(nx_count + ny_count, edges)
    logger.warning(f"Random bipartite generator hit the retry limit of {GENERATOR_MAX_RETRIES}")
    raise PreconditionError(
        f"No random bipartite graph with nx={nx_count}, ny={ny_count}, dmax={dmax}"
    )


def near_regular(n: int, d: int, seed: Optional[int] = None) -> Graph:
    """A random d-regular graph on n vertices."""
    if d >= n or d < 0:
        raise PreconditionError(f"Regular graph needs 0 <= d < n, got n={n}, d={d}")
    if (n * d) % 2:
        raise PreconditionError(f"No {d}-regular graph on {n} vertices: n*d is odd")
    rng = np.random.default_rng(seed)
    nx_graph = nx.random_regular_graph(d, n, seed=int(rng.integers(2**31)))
    return Graph.from_networkx(nx_graph)


def tree_of_stars(stars: int, leaves: int, seed: Optional[int] = None) -> Graph:
    """
    Star centers joined by a random tree, each center carrying ``leaves`` leaves.

    Centers are ``0..stars-1``; center ``i > 0`` hangs off a random earlier one.
    """
    if stars < 1 or leaves < 1:
        raise PreconditionError("Tree of stars needs stars, leaves >= 1")
    rng = np.random.default_rng(seed)
    edges = [(int(rng.integers(i)), i) for i in range(1, stars)]
    leaf = stars
    for center in range(stars):
        for _ in range(leaves):
            edges.append((center, leaf))
            leaf += 1
    graph = Graph.from_edges(leaf, edges)
    bad = [v for v, degree in enumerate(graph.degrees()) if degree in (0, 2)]
    if bad:
        raise PreconditionError(f"Tree of stars has vertex {bad[0]} of degree 2", vertex=bad[0])
    return graph


def generate(family: Family, params: Dict[str, Any], seed: Optional[int] = None) -> Graph:
    """
    Build a graph of the named family.

    Args:
        family: The family.
        params: Family parameters: ``n`` (complete), ``a``/``b``
            (complete-bipartite), ``t`` (star), ``nx``/``ny``/``dmax``
            (random-bipartite), ``n``/``d`` (near-regular), ``k`` (hypercube),
            ``stars``/``leaves`` (tree-of-stars).
        seed: Seed for the random families.

    Returns:
        The Graph.
    """
    family = Family(family)
    try:
        if family is Family.COMPLETE:
            return complete(params["n"])
        if family is Family.COMPLETE_BIPARTITE:
            return complete_bipartite(params["a"], params["b"])
        if family is Family.STAR:
            return star(params["t"])
        if family is Family.RANDOM_BIPARTITE:
            return random_bipartite(params["nx"], params["ny"], params["dmax"], seed)
        if family is Family.NEAR_REGULAR:
            return near_regular(params["n"], params["d"], seed)
        if family is Family.HYPERCUBE:
            return hypercube(params["k"])
        return tree_of_stars(params["stars"], params["leaves"], seed)
    except (KeyError, TypeError) as e:
        raise PreconditionError(f"Missing parameter for family {family.value}: {e}") from e
