"""
Antimagic orientations of graphs

Constructs, verifies and searches for antimagic orientations: an orientation
and a bijective edge labeling with ``1..m`` under which every vertex has a
different in-minus-out label sum. Two constructions are provided, one for
bipartite graphs with no vertex of degree 0 or 2 and one for graphs with
minimum degree at least 33.
"""

__version__ = "0.1.0"

from .bipartite import antimagic_orientation_bipartite
from .exceptions import (
    AntimagicError,
    BudgetExceededError,
    CounterexampleError,
    InternalAssertionError,
    MalformedInputError,
    NotBipartiteError,
    PreconditionError,
    StructuralError,
)
from .graph import oriented_vertex_sums, verify_antimagic
from .mindegree import antimagic_orientation_mindegree
from .models import Certificate, Graph, Labeling, Orientation, Verdict
from .oracle import brute_force_antimagic
from .partition import residue_partition, verify_residue_partition

__all__ = [
    "antimagic_orientation_bipartite",
    "antimagic_orientation_mindegree",
    "brute_force_antimagic",
    "oriented_vertex_sums",
    "verify_antimagic",
    "residue_partition",
    "verify_residue_partition",
    "Certificate",
    "Graph",
    "Labeling",
    "Orientation",
    "Verdict",
    "AntimagicError",
    "BudgetExceededError",
    "CounterexampleError",
    "InternalAssertionError",
    "MalformedInputError",
    "NotBipartiteError",
    "PreconditionError",
    "StructuralError",
]
