"""
Line-oriented graph documents: ``node <id> <rho>`` / ``edge <from> <to> <trust> <intimacy>``
"""

import logging
from pathlib import Path
from typing import Dict, FrozenSet, List, Tuple, Union

from pydantic import ValidationError

from ..models import Participant, TrustEdge
from .social_graph import GraphFormatError, SocialGraph

logger = logging.getLogger(__name__)


def _first_error(exc: ValidationError) -> str:
    err = exc.errors()[0]
    field = ".".join(str(part) for part in err.get("loc", ()) if part != "__root__")
    message = err.get("msg", str(exc))
    return f"{field}: {message}" if field else message


def _parse_float(token: str, what: str, line: int) -> float:
    try:
        return float(token)
    except ValueError:
        raise GraphFormatError(f"{what} {token!r} is not a decimal number", line) from None


def load_graph(document: str) -> SocialGraph:
    """
    Parse a graph document and build the symmetric SocialGraph

    Args:
        document: UTF-8 text in the graph file format

    Returns:
        SocialGraph where every listed edge answers in both directions

    Raises:
        GraphFormatError: malformed line, duplicate node, out-of-range value,
            self-loop, unknown endpoint or asymmetric duplicate (with line number)
    """
    participants: Dict[str, Participant] = {}
    edges: List[TrustEdge] = []
    edge_lines: List[int] = []
    seen_pairs: Dict[FrozenSet[str], Tuple[float, float, int]] = {}

    for lineno, raw in enumerate(document.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        kind = tokens[0]

        if kind == "node":
            if len(tokens) != 3:
                raise GraphFormatError("expected 'node <id> <rho>'", lineno)
            node_id = tokens[1]
            if node_id in participants:
                raise GraphFormatError(f"duplicate participant id {node_id!r}", lineno)
            rho = _parse_float(tokens[2], "rho", lineno)
            try:
                participants[node_id] = Participant(id=node_id, rho=rho)
            except ValidationError as e:
                raise GraphFormatError(_first_error(e), lineno) from None

        elif kind == "edge":
            if len(tokens) != 5:
                raise GraphFormatError("expected 'edge <from> <to> <trust> <intimacy>'", lineno)
            trust = _parse_float(tokens[3], "trust", lineno)
            intimacy = _parse_float(tokens[4], "intimacy", lineno)
            try:
                edge = TrustEdge(source=tokens[1], target=tokens[2], trust=trust, intimacy=intimacy)
            except ValidationError as e:
                raise GraphFormatError(_first_error(e), lineno) from None

            pair = frozenset((edge.source, edge.target))
            if pair in seen_pairs:
                prev_trust, prev_intimacy, prev_line = seen_pairs[pair]
                if (prev_trust, prev_intimacy) != (trust, intimacy):
                    raise GraphFormatError(
                        f"asymmetric values for {edge.source!r}-{edge.target!r} "
                        f"(first given on line {prev_line})",
                        lineno,
                    )
                continue
            seen_pairs[pair] = (trust, intimacy, lineno)
            edges.append(edge)
            edge_lines.append(lineno)

        else:
            raise GraphFormatError(f"unknown record type {kind!r}", lineno)

    for edge, lineno in zip(edges, edge_lines):
        for end in (edge.source, edge.target):
            if end not in participants:
                raise GraphFormatError(f"edge endpoint {end!r} is not a declared node", lineno)

    graph = SocialGraph.from_records(participants.values(), edges)
    logger.debug("Loaded graph document: %r", graph)
    return graph


def read_graph(path: Union[str, Path]) -> SocialGraph:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Graph file not found: {path}")
    return load_graph(path.read_text(encoding="utf-8"))


def dump_graph(graph: SocialGraph) -> str:
    """Serialize a graph in the document format (each symmetric pair once)"""
    lines = [
        f"# {graph.number_of_nodes()} participants, {graph.number_of_edges()} trust pairs",
    ]
    for p in graph.participants():
        lines.append(f"node {p.id} {p.rho!r}")
    for e in graph.edges():
        lines.append(f"edge {e.source} {e.target} {e.trust!r} {e.intimacy!r}")
    return "\n".join(lines) + "\n"


def write_graph(graph: SocialGraph, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_graph(graph), encoding="utf-8")
    return path
