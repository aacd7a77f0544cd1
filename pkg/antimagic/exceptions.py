"""
Exceptions raised by the antimagic orientation library.

Every error carries the process exit code the ``antimagic`` CLI reports for
it, so the command line never has to keep its own mapping in step with the
hierarchy.
"""

from typing import TYPE_CHECKING, List, Optional

if TYPE_CHECKING:
    from .models import Certificate, Verdict


class AntimagicError(Exception):
    """Base exception for all antimagic errors.

    Args:
        message: A description of what went wrong.
        exit_code: The exit status the CLI uses for this error.
    """

    exit_code = 4

    def __init__(self, message: str, exit_code: Optional[int] = None):
        super().__init__(message)
        if exit_code is not None:
            self.exit_code = exit_code


class PreconditionError(AntimagicError):
    """Exception raised when an input violates an operation's precondition.

    Typical causes are a vertex of degree 0 or 2 handed to the bipartite
    pipeline, or a minimum degree below 33 handed to the minimum-degree one.

    Args:
        message: A description of the violated precondition.
        vertex: The offending vertex, when there is a single one to blame.
    """

    exit_code = 2

    def __init__(self, message: str, vertex: Optional[int] = None):
        super().__init__(message)
        self.vertex = vertex


class NotBipartiteError(PreconditionError):
    """Exception raised when a graph has an odd cycle.

    The cycle is kept as a closed vertex sequence (first vertex repeated at
    the end) so callers can show the witness.
    """

    def __init__(self, message: str, cycle: List[int]):
        super().__init__(message, vertex=cycle[0] if cycle else None)
        self.cycle = cycle


class StructuralError(PreconditionError):
    """Exception raised when a graph lacks the structure a construction needs.

    Raised by the trail labelings and the S/T partition, e.g. an odd-degree vertex in the
    exact set, or a bipartition that has an edge inside one side.
    """
    pass


class MalformedInputError(AntimagicError):
    """Exception raised for unreadable or inconsistent input.

    Covers edge-list and certificate documents that do not parse, labelings
    that miss an edge or repeat a label, and vertex ids out of range.
    """

    exit_code = 3


class InternalAssertionError(AntimagicError):
    """Exception raised when a construction fails its own postcondition check.

    The constructions are proven correct, so this always means a bug.
    """

    exit_code = 4


class CounterexampleError(AntimagicError):
    """Exception raised when an unsafe-mode run yields a rejected certificate.

    Outside the proven range a rejection is a finding, not a bug, so it is
    reported with exit status 1 along with the evidence.
    """

    exit_code = 1

    def __init__(self, message: str, certificate: "Certificate", verdict: "Verdict"):
        super().__init__(message)
        self.certificate = certificate
        self.verdict = verdict


class BudgetExceededError(AntimagicError):
    """Exception raised inside the oracle when its search budget runs out.

    ``brute_force_antimagic`` turns it into an inconclusive result; it never
    escapes the oracle.
    """

    def __init__(self, message: str, explored: int = 0):
        super().__init__(message)
        self.explored = explored
