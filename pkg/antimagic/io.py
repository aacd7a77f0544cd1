"""
Reading and writing edge lists and certificate documents.

Edge lists are plain text: a header ``n m`` followed by ``m`` lines ``u v``
with 0-based vertex ids. Lines starting with ``#`` are comments.

Certificates are JSON objects with ``n``, ``m``, ``arcs`` (``tail``, ``head``,
``label``), ``sums`` (``vertex``, ``sum``) and ``meta``.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Union

from . import __version__
from .exceptions import MalformedInputError
from .graph import oriented_vertex_sums, verify_antimagic
from .models import Certificate, Graph, Labeling, Orientation, Verdict, ViolationKind

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def parse_edge_list(text: str) -> Graph:
    """
    Parse an edge-list document.

    Args:
        text: The document.

    Returns:
        The Graph.

    Raises:
        MalformedInputError: If the header or an edge line is unreadable, the
            edge count does not match, or the edges do not form a simple graph.
    """
    rows: List[List[str]] = []
    for line in text.splitlines():
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            rows.append(stripped.split())
    if not rows:
        raise MalformedInputError("Edge list is empty: expected a header line 'n m'")
    try:
        n, m = (int(value) for value in rows[0])
        edges = [(int(u), int(v)) for u, v in rows[1:]]
    except ValueError as e:
        raise MalformedInputError(f"Edge list is not a list of integer pairs: {e}") from e
    if len(edges) != m:
        raise MalformedInputError(f"Header announces {m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges)


def format_edge_list(graph: Graph) -> str:
    """Serialize a graph as a canonical edge-list document."""
    lines = [f"{graph.vertex_count} {graph.edge_count}"]
    lines += [f"{u} {v}" for u, v in graph.edges]
    return "\n".join(lines) + "\n"


def read_edge_list(path: PathLike) -> Graph:
    """Read an edge-list document from a file."""
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise MalformedInputError(f"Cannot read edge list {path}: {e}") from e
    return parse_edge_list(text)


def write_edge_list(path: PathLike, graph: Graph) -> None:
    """Write a graph to a file as an edge-list document."""
    Path(path).write_text(format_edge_list(graph))


def certificate_to_document(cert: Certificate) -> Dict[str, Any]:
    """
    Convert a certificate to its JSON document form.

    ``meta.versions`` records the library version; everything else comes from
    the certificate, so equal certificates give equal documents.
    """
    meta = dict(cert.meta)
    meta.setdefault("versions", {"antimagic": __version__})
    return {
        "n": cert.graph.vertex_count,
        "m": cert.graph.edge_count,
        "arcs": [{"tail": t, "head": h, "label": label} for t, h, label in cert.arcs()],
        "sums": [{"vertex": v, "sum": s} for v, s in enumerate(cert.sums)],
        "meta": meta,
    }


def certificate_to_json(cert: Certificate) -> str:
    """Serialize a certificate as a JSON document."""
    return json.dumps(certificate_to_document(cert), indent=2) + "\n"


def _integer(value: Any, field: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise MalformedInputError(f"Certificate field {field} must be an integer, got {value!r}")
    return value


def certificate_from_document(data: Dict[str, Any]) -> Certificate:
    """
    Build a certificate from its JSON document form.

    Arcs become edges ``(tail, head)`` oriented forward. The declared sums are
    kept as they are; ``verify_certificate_document`` compares them with the
    recomputed ones.

    Raises:
        MalformedInputError: If a field is missing or has the wrong shape.
    """
    try:
        n = _integer(data["n"], "n")
        arcs = [
            tuple(_integer(a[key], key) for key in ("tail", "head", "label"))
            for a in data["arcs"]
        ]
        declared = {
            _integer(s["vertex"], "vertex"): _integer(s["sum"], "sum") for s in data["sums"]
        }
        meta = dict(data.get("meta", {}))
        m = _integer(data.get("m", len(arcs)), "m")
    except (KeyError, TypeError, ValueError) as e:
        raise MalformedInputError(f"Certificate document is malformed: {e}") from e
    if m != len(arcs):
        raise MalformedInputError(f"Certificate announces {m} arcs, found {len(arcs)}")
    if set(declared) != set(range(n)):
        raise MalformedInputError("Certificate must declare a sum for every vertex")
    graph = Graph.from_edges(n, ((t, h) for t, h, _ in arcs))
    return Certificate(
        graph=graph,
        orientation=Orientation((True,) * len(arcs)),
        labeling=Labeling(tuple(label for _, _, label in arcs)),
        sums=tuple(declared[v] for v in range(n)),
        meta=meta,
    )


def read_certificate(path: PathLike) -> Certificate:
    """Read a certificate document from a file."""
    try:
        data = json.loads(Path(path).read_text())
    except OSError as e:
        raise MalformedInputError(f"Cannot read certificate {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise MalformedInputError(f"Certificate {path} is not valid JSON: {e}") from e
    return certificate_from_document(data)


def write_certificate(path: PathLike, cert: Certificate) -> None:
    """Write a certificate to a file as a JSON document."""
    Path(path).write_text(certificate_to_json(cert))


def verify_certificate_document(data: Dict[str, Any]) -> Verdict:
    """
    Verify a certificate document.

    The arcs must form an antimagic orientation and the declared sums must
    match the recomputed ones.
    """
    cert = certificate_from_document(data)
    verdict = verify_antimagic(cert)
    if not verdict:
        return verdict
    actual = oriented_vertex_sums(cert.graph, cert.orientation, cert.labeling)
    for v, declared in enumerate(cert.sums):
        if actual[v] != declared:
            return Verdict.reject(
                ViolationKind.SUM_MISMATCH,
                (v,),
                f"vertex {v} declares sum {declared}, actual {actual[v]}",
            )
    return verdict
