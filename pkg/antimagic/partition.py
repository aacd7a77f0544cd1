"""
Residue-balanced partitions of ``{1..n}``.

``residue_partition(n, sizes)`` splits ``{1..n}`` into parts of the requested
sizes (each at least 2) so that every part sum is divisible by the modulus
``n + 1`` (even ``n``) or ``n`` (odd ``n``).

The parts are assembled from zero-sum blocks:

* complement pairs ``{j, M - j}``,
* for odd ``n``, the singleton ``{n}``,
* zero-sum triples for the remaining odd-size parts.

The triples come two at a time from a Skolem sequence (or a hooked Skolem
sequence) of order ``q``. A pair of positions ``(a, b)`` with ``b - a = i``
gives ``x = i``, ``y = a + q`` and ``c = b + q`` with ``x + y = c``. That makes
``{x, y, M - c}`` sum to ``M`` and ``{M - x, M - y, c}`` sum to ``2M``, while
the two triples together use exactly the three pairs of ``x``, ``y`` and ``c``.
"""

import itertools
import logging
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .exceptions import InternalAssertionError, PreconditionError
from .models import ResiduePartition, Verdict, ViolationKind

logger = logging.getLogger(__name__)

# Largest n for which a failed construction is completed by exhaustive search
EXHAUSTIVE_FALLBACK_LIMIT = 14

Pairs = List[Tuple[int, int]]

# Small orders not covered by the general families
_SKOLEM_SMALL: Dict[int, Pairs] = {
    1: [(1, 2)],
    4: [(7, 8), (2, 4), (3, 6), (1, 5)],
    5: [(8, 9), (1, 3), (4, 7), (2, 6), (5, 10)],
}
_HOOKED_SMALL: Dict[int, Pairs] = {
    2: [(1, 2), (3, 5)],
    3: [(2, 3), (1, 4), (5, 7)],
    6: [(4, 5), (9, 11), (10, 13), (2, 6), (3, 8), (1, 7)],
    7: [(1, 8), (3, 9), (2, 7), (6, 10), (12, 15), (11, 13), (4, 5)],
}

# Closing blocks of the order 4s+3 hooked family, as offsets from the block start
_HOOKED_TAILS: Dict[int, Pairs] = {
    4: [(0, 8), (1, 7), (5, 9), (4, 6)],
    5: [(0, 10), (1, 9), (5, 11), (3, 7), (6, 8)],
    6: [(0, 12), (3, 13), (1, 9), (4, 10), (7, 11), (6, 8)],
}


def modulus_for(n: int) -> int:
    """The modulus part sums must vanish under: ``n + 1`` for even ``n``, else ``n``."""
    return n + 1 if n % 2 == 0 else n


def _odd_core(s: int) -> Pairs:
    # Shared by the 4s+1, 4s+2 and 4s+3 families.
    pairs = [(r, 4 * s - r + 1) for r in range(1, s + 1)]
    pairs += [(s + r + 2, 3 * s - r + 1) for r in range(1, s - 1)]
    pairs += [(s + 1, s + 2), (2 * s + 1, 6 * s + 2), (2 * s + 2, 4 * s + 1)]
    return pairs


def skolem_sequence(order: int) -> Pairs:
    """
    Position pairs of a Skolem sequence of the given order.

    The pairs cover ``1..2*order`` once each and their differences are
    ``1..order``. Orders are 0 or 1 mod 4.
    """
    if order % 4 not in (0, 1):
        raise PreconditionError(f"No Skolem sequence of order {order}")
    if order == 0:
        return []
    if order in _SKOLEM_SMALL:
        return list(_SKOLEM_SMALL[order])
    s = order // 4
    if order % 4 == 0:
        pairs = [(4 * s + r - 1, 8 * s - r + 1) for r in range(1, 2 * s + 1)]
        pairs += [(r, 4 * s - r - 1) for r in range(1, s - 1)]
        pairs += [(s + r + 1, 3 * s - r) for r in range(1, s - 1)]
        pairs += [(s - 1, 3 * s), (s, s + 1), (2 * s, 4 * s - 1), (2 * s + 1, 6 * s)]
        return pairs
    pairs = [(4 * s + r + 1, 8 * s - r + 3) for r in range(1, 2 * s + 1)]
    return pairs + _odd_core(s)


def hooked_skolem_sequence(order: int) -> Pairs:
    """
    Position pairs of a hooked Skolem sequence of the given order.

    Like a Skolem sequence, but on ``1..2*order+1`` with position ``2*order``
    left empty. Orders are 2 or 3 mod 4.
    """
    if order % 4 not in (2, 3):
        raise PreconditionError(f"No hooked Skolem sequence of order {order}")
    if order in _HOOKED_SMALL:
        return list(_HOOKED_SMALL[order])
    if order % 4 == 2:
        s = (order - 2) // 4
        pairs = _odd_core(s)
        pairs += [(4 * s + 1 + 2 * j, 4 * s + 1 + 2 * (2 * s + 3 - j)) for j in range(1, s + 2)]
        pairs += [(4 * s + 2 * j, 4 * s + 2 * (2 * s + 2 - j)) for j in range(1, s + 1)]
        return pairs
    s = (order - 3) // 4
    pairs = _odd_core(s)
    pairs += [(4 * s + 2, 8 * s + 5), (4 * s + 5, 8 * s + 7)]
    tail = next(t for t in (4, 5, 6) if t % 3 == (2 * s) % 3)
    groups = (2 * s - tail) // 3
    base = 4 * s + 3
    for g in range(groups):
        pairs += [
            (base + 3 * g, 8 * s + 3 - 3 * g),
            (base + 1 + 3 * g, 8 * s + 2 - 3 * g),
            (base + 5 + 3 * g, 8 * s + 4 - 3 * g),
        ]
    start = base + 3 * groups
    pairs += [(start + a, start + b) for a, b in _HOOKED_TAILS[tail]]
    return pairs


def _triples(q: int, modulus: int) -> List[FrozenSet[int]]:
    if q == 0:
        return []
    pairs = skolem_sequence(q) if q % 4 in (0, 1) else hooked_skolem_sequence(q)
    triples = []
    for a, b in sorted(pairs, key=lambda p: p[1] - p[0]):
        x, y, c = b - a, a + q, b + q
        triples.append(frozenset((x, y, modulus - c)))
        triples.append(frozenset((modulus - x, modulus - y, c)))
    return triples


def _check_request(n: int, sizes: Sequence[int]) -> None:
    if n < 2:
        raise PreconditionError(f"n must be at least 2, got {n}")
    small = [r for r in sizes if r < 2]
    if small:
        raise PreconditionError(f"Part sizes must be at least 2, got {small[0]}")
    if sum(sizes) != n:
        raise PreconditionError(f"Part sizes sum to {sum(sizes)}, expected {n}")


def _construct(n: int, sizes: Sequence[int]) -> List[FrozenSet[int]]:
    modulus = modulus_for(n)
    odd_parts = [i for i, r in enumerate(sizes) if r % 2 == 1]
    singleton_part: Optional[int] = None
    if n % 2 == 1:
        singleton_part = odd_parts[0]
        triple_parts = odd_parts[1:]
    else:
        triple_parts = odd_parts
    triples = _triples(len(triple_parts) // 2, modulus)

    parts: List[set] = [set() for _ in sizes]
    used = set()
    if singleton_part is not None:
        parts[singleton_part].add(n)
        used.add(n)
    for index, triple in zip(triple_parts, triples):
        parts[index] |= triple
        used |= triple

    free_pairs = (
        (j, modulus - j) for j in range(1, (n // 2) + 1) if j not in used and modulus - j not in used
    )
    for index, size in enumerate(sizes):
        while len(parts[index]) < size:
            pair = next(free_pairs, None)
            if pair is None:
                break
            parts[index].update(pair)
    return [frozenset(p) for p in parts]


def _exhaustive(n: int, sizes: Sequence[int]) -> Optional[List[FrozenSet[int]]]:
    modulus = modulus_for(n)

    def extend(remaining: FrozenSet[int], index: int) -> Optional[List[FrozenSet[int]]]:
        if index == len(sizes):
            return []
        for combo in itertools.combinations(sorted(remaining), sizes[index]):
            if sum(combo) % modulus:
                continue
            rest = extend(remaining - frozenset(combo), index + 1)
            if rest is not None:
                return [frozenset(combo)] + rest
        return None

    return extend(frozenset(range(1, n + 1)), 0)


def residue_partition(n: int, sizes: Sequence[int]) -> ResiduePartition:
    """
    Partition ``{1..n}`` into parts of the given sizes with zero-residue sums.

    Args:
        n: The largest element.
        sizes: Requested part sizes, each at least 2, summing to ``n``.

    Returns:
        A ResiduePartition whose ``parts[i]`` has ``sizes[i]`` elements.

    Raises:
        PreconditionError: If ``n < 2``, a size is below 2 or the sizes do not
            sum to ``n``.
        InternalAssertionError: If the construction fails its own check.
    """
    sizes = list(sizes)
    _check_request(n, sizes)
    odd_count = sum(r % 2 for r in sizes)
    logger.debug(f"Residue partition of 1..{n} into {len(sizes)} parts, {odd_count} odd")

    result = ResiduePartition(n=n, modulus=modulus_for(n), parts=tuple(_construct(n, sizes)))
    verdict = verify_residue_partition(result, n, sizes)
    if verdict:
        return result

    if n <= EXHAUSTIVE_FALLBACK_LIMIT:
        logger.warning(f"Residue partition construction failed for n={n}, sizes={sizes}: {verdict}")
        parts = _exhaustive(n, sizes)
        if parts is not None:
            return ResiduePartition(n=n, modulus=result.modulus, parts=tuple(parts))
    raise InternalAssertionError(f"Residue partition for n={n}, sizes={sizes} failed: {verdict}")


def verify_residue_partition(
    partition: ResiduePartition, n: int, sizes: Sequence[int]
) -> Verdict:
    """
    Check a partition against ``(n, sizes)``.

    Args:
        partition: The partition to check.
        n: The expected ground set is ``{1..n}``.
        sizes: The expected part sizes, in part order.

    Returns:
        The verdict; witnesses are part indices or elements.
    """
    parts = partition.parts
    if len(parts) != len(sizes):
        return Verdict.reject(
            ViolationKind.SIZE_MISMATCH, (), f"{len(parts)} parts for {len(sizes)} sizes"
        )
    for index, (part, size) in enumerate(zip(parts, sizes)):
        if len(part) != size:
            return Verdict.reject(
                ViolationKind.SIZE_MISMATCH,
                (index,),
                f"part {index} has {len(part)} elements, expected {size}",
            )

    seen: Dict[int, int] = {}
    for index, part in enumerate(parts):
        for element in part:
            if element in seen:
                return Verdict.reject(
                    ViolationKind.NOT_A_PARTITION,
                    (seen[element], index),
                    f"{element} is in parts {seen[element]} and {index}",
                )
            seen[element] = index
    if set(seen) != set(range(1, n + 1)):
        stray = sorted(set(seen) ^ set(range(1, n + 1)))
        return Verdict.reject(
            ViolationKind.NOT_A_PARTITION, stray[:1], f"parts do not cover exactly 1..{n}"
        )

    modulus = modulus_for(n)
    for index, part in enumerate(parts):
        if sum(part) % modulus:
            return Verdict.reject(
                ViolationKind.NONZERO_RESIDUE,
                (index,),
                f"part {index} sums to {sum(part)}, not divisible by {modulus}",
            )
    return Verdict.accept()
