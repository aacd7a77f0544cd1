"""
Unit tests for the exceptions module.
"""

import pytest

from antimagic.exceptions import (
    AntimagicError,
    BudgetExceededError,
    CounterexampleError,
    InternalAssertionError,
    MalformedInputError,
    NotBipartiteError,
    PreconditionError,
    StructuralError,
)
from antimagic.models import Verdict, ViolationKind


@pytest.mark.parametrize(
    "error, code",
    [
        (AntimagicError("boom"), 4),
        (PreconditionError("degree 2"), 2),
        (StructuralError("odd degree"), 2),
        (NotBipartiteError("odd cycle", [0, 1, 2, 0]), 2),
        (MalformedInputError("bad header"), 3),
        (InternalAssertionError("bug"), 4),
        (BudgetExceededError("out of budget"), 4),
    ],
)
def test_exit_codes(error, code):
    """Test that every error carries its CLI exit code."""
    assert error.exit_code == code
    assert isinstance(error, AntimagicError)


def test_exit_code_override():
    """Test that an explicit exit code wins over the class default."""
    error = AntimagicError("custom", exit_code=7)
    assert error.exit_code == 7
    assert AntimagicError("plain").exit_code == 4


def test_precondition_error_vertex():
    """Test PreconditionError keeps the offending vertex."""
    error = PreconditionError("Vertex 3 has degree 2", vertex=3)
    assert str(error) == "Vertex 3 has degree 2"
    assert error.vertex == 3
    assert PreconditionError("no vertex").vertex is None


def test_not_bipartite_error_cycle():
    """Test NotBipartiteError carries the closed odd cycle."""
    error = NotBipartiteError("odd cycle", [0, 1, 2, 0])
    assert error.cycle == [0, 1, 2, 0]
    assert error.vertex == 0
    assert isinstance(error, PreconditionError)


def test_structural_error_is_precondition():
    """Test StructuralError is a PreconditionError."""
    with pytest.raises(PreconditionError):
        raise StructuralError("Vertex 1 needs an exact sum but has odd degree", vertex=1)


def test_counterexample_error():
    """Test CounterexampleError keeps its evidence and exits with 1."""
    verdict = Verdict.reject(ViolationKind.DUPLICATE_SUM, (1, 2), "same sum")
    error = CounterexampleError("rejected", certificate=None, verdict=verdict)
    assert error.exit_code == 1
    assert error.verdict is verdict
    assert error.certificate is None


def test_budget_exceeded_error_explored():
    """Test BudgetExceededError records how far the search got."""
    assert BudgetExceededError("stop", explored=42).explored == 42
    assert BudgetExceededError("stop").explored == 0
