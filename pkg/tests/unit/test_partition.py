"""
Unit tests for the partition module.
"""

import logging

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from antimagic.exceptions import InternalAssertionError, PreconditionError
from antimagic.models import ResiduePartition, ViolationKind
from antimagic.partition import (
    hooked_skolem_sequence,
    modulus_for,
    residue_partition,
    skolem_sequence,
    verify_residue_partition,
)


@st.composite
def partition_requests(draw, max_n=60):
    """Draw n and part sizes >= 2 summing to n, in random order."""
    n = draw(st.integers(min_value=2, max_value=max_n))
    sizes = []
    left = n
    while left >= 4:
        size = draw(st.integers(min_value=2, max_value=left - 2))
        sizes.append(size)
        left -= size
    sizes.append(left)
    return n, draw(st.permutations(sizes))


def _all_size_lists(n, smallest=2):
    if n == 0:
        yield []
        return
    for first in range(smallest, n + 1):
        for rest in _all_size_lists(n - first, first):
            yield [first] + rest


def _parts(partition):
    return [sorted(p) for p in partition.parts]


@pytest.mark.parametrize("n, modulus", [(2, 3), (5, 5), (6, 7), (9, 9), (12, 13)])
def test_modulus_for(n, modulus):
    """Test the modulus for odd and even n."""
    assert modulus_for(n) == modulus


@pytest.mark.parametrize(
    "n, sizes, expected",
    [
        (6, [2, 2, 2], [[1, 6], [2, 5], [3, 4]]),
        (9, [3, 3, 3], [[4, 5, 9], [1, 2, 6], [3, 7, 8]]),
        (5, [2, 3], [[1, 4], [2, 3, 5]]),
    ],
)
def test_residue_partition_examples(n, sizes, expected):
    """Test the construction on small hand-checked requests."""
    partition = residue_partition(n, sizes)
    assert _parts(partition) == expected
    assert partition.modulus == modulus_for(n)
    assert verify_residue_partition(partition, n, sizes)


@pytest.mark.parametrize("n", range(2, 13))
def test_residue_partition_exhaustive_small(n):
    """Test every multiset of sizes for small n, in both orders."""
    for sizes in _all_size_lists(n):
        for ordered in (sizes, sizes[::-1]):
            partition = residue_partition(n, ordered)
            assert verify_residue_partition(partition, n, ordered), (n, ordered)


@given(partition_requests())
@settings(max_examples=300, deadline=None)
def test_residue_partition_random(request):
    """Test the construction on random requests."""
    n, sizes = request
    partition = residue_partition(n, sizes)
    verdict = verify_residue_partition(partition, n, sizes)
    assert verdict, verdict
    assert [len(p) for p in partition.parts] == list(sizes)


def test_residue_partition_many_odd_parts():
    """Test a request that needs many zero-sum triples."""
    sizes = [3] * 33
    partition = residue_partition(99, sizes)
    assert verify_residue_partition(partition, 99, sizes)


@pytest.mark.parametrize(
    "n, sizes, message",
    [
        (1, [1], "at least 2"),
        (6, [1, 5], "at least 2"),
        (6, [2, 2], "sum to 4"),
    ],
)
def test_residue_partition_preconditions(n, sizes, message):
    """Test that invalid requests raise PreconditionError."""
    with pytest.raises(PreconditionError, match=message):
        residue_partition(n, sizes)


def test_residue_partition_falls_back_to_search(monkeypatch, caplog):
    """Test that a broken construction is repaired by search for small n."""
    monkeypatch.setattr(
        "antimagic.partition._construct", lambda n, sizes: [frozenset({1, 2}), frozenset({3, 4})]
    )
    with caplog.at_level(logging.WARNING, logger="antimagic.partition"):
        partition = residue_partition(4, [2, 2])
    assert "construction failed" in caplog.text
    assert verify_residue_partition(partition, 4, [2, 2])


def test_residue_partition_raises_without_fallback(monkeypatch):
    """Test that a broken construction for large n is an internal error."""
    monkeypatch.setattr(
        "antimagic.partition._construct",
        lambda n, sizes: [frozenset(range(1, n + 1))],
    )
    with pytest.raises(InternalAssertionError):
        residue_partition(20, [10, 10])


def test_verify_residue_partition_rejections():
    """Test each rejection reason of verify_residue_partition."""
    def make(*parts):
        return ResiduePartition(n=6, modulus=7, parts=tuple(frozenset(p) for p in parts))

    verdict = verify_residue_partition(make({1, 2}, {3, 4, 5, 6}), 6, [2, 4])
    assert verdict.violation is ViolationKind.NONZERO_RESIDUE
    assert verdict.witness == (0,)

    verdict = verify_residue_partition(make({1, 6}, {2, 5}, {3, 4}), 6, [3, 3])
    assert verdict.violation is ViolationKind.SIZE_MISMATCH

    verdict = verify_residue_partition(make({1, 6}, {1, 6}, {3, 4}), 6, [2, 2, 2])
    assert verdict.violation is ViolationKind.NOT_A_PARTITION
    assert verdict.witness == (0, 1)

    verdict = verify_residue_partition(make({1, 6}, {2, 5}, {3, 7}), 6, [2, 2, 2])
    assert verdict.violation is ViolationKind.NOT_A_PARTITION


def _check_skolem(pairs, order, hooked):
    positions = sorted(p for pair in pairs for p in pair)
    expected = list(range(1, 2 * order + 1))
    if hooked:
        expected = [p for p in range(1, 2 * order + 2) if p != 2 * order]
    assert positions == expected
    assert sorted(b - a for a, b in pairs) == list(range(1, order + 1))


@pytest.mark.parametrize("order", [o for o in range(1, 60) if o % 4 in (0, 1)])
def test_skolem_sequence(order):
    """Test Skolem sequences cover every position with every difference once."""
    _check_skolem(skolem_sequence(order), order, hooked=False)


@pytest.mark.parametrize("order", [o for o in range(2, 60) if o % 4 in (2, 3)])
def test_hooked_skolem_sequence(order):
    """Test hooked Skolem sequences leave exactly the hook position empty."""
    _check_skolem(hooked_skolem_sequence(order), order, hooked=True)


def test_skolem_order_mismatch():
    """Test that orders of the wrong class are refused."""
    with pytest.raises(PreconditionError):
        skolem_sequence(2)
    with pytest.raises(PreconditionError):
        hooked_skolem_sequence(4)
