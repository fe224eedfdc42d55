"""
Trust-annotated social graph backed by networkx
"""

import logging
from typing import Dict, Iterable, List, Optional, Tuple

import networkx as nx

from ..models import Participant, TrustEdge

logger = logging.getLogger(__name__)


class GraphError(ValueError):
    """Base class for graph construction and lookup errors"""


class GraphFormatError(GraphError):
    """Malformed graph document; ``line`` is 1-based when known"""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class UnknownNodeError(GraphError):
    def __init__(self, node: str):
        self.node = node
        super().__init__(f"unknown participant {node!r}")


class MissingEdgeError(GraphError):
    def __init__(self, u: str, v: str):
        self.edge = (u, v)
        super().__init__(f"no trust edge between {u!r} and {v!r}")


def node_sort_key(node: str) -> Tuple[int, int, str]:
    """Numeric ids first (numerically), then the rest as strings"""
    if node.isdigit():
        return (0, int(node), node)
    return (1, 0, node)


def path_sort_key(path: Iterable[str]) -> Tuple[Tuple[int, int, str], ...]:
    return tuple(node_sort_key(n) for n in path)


class SocialGraph:
    """Immutable symmetric trust graph.

    Every stored pair answers the same trust and intimacy in both directions
    (networkx ``Graph`` storage). Construct with ``from_records`` so that all
    participant and edge invariants are checked once; the underlying graph is
    frozen afterwards.
    """

    def __init__(self, graph: nx.Graph):
        self._graph = nx.freeze(graph)
        self._rho: Dict[str, float] = {n: float(d["rho"]) for n, d in graph.nodes(data=True)}
        self._adjacency: Dict[str, Tuple[str, ...]] = {
            n: tuple(sorted(graph.neighbors(n), key=node_sort_key)) for n in graph.nodes
        }
        self._nodes: Tuple[str, ...] = tuple(sorted(graph.nodes, key=node_sort_key))

    @classmethod
    def from_records(
        cls, participants: Iterable[Participant], edges: Iterable[TrustEdge]
    ) -> "SocialGraph":
        graph = nx.Graph()
        for p in participants:
            if p.id in graph:
                raise GraphError(f"duplicate participant id {p.id!r}")
            graph.add_node(p.id, rho=p.rho)
        for e in edges:
            for end in (e.source, e.target):
                if end not in graph:
                    raise UnknownNodeError(end)
            if graph.has_edge(e.source, e.target):
                data = graph.edges[e.source, e.target]
                if data["trust"] != e.trust or data["intimacy"] != e.intimacy:
                    raise GraphError(
                        f"asymmetric trust values for {e.source!r}-{e.target!r}"
                    )
                continue
            graph.add_edge(e.source, e.target, trust=e.trust, intimacy=e.intimacy)
        logger.debug(
            "Built social graph with %d participants and %d trust pairs",
            graph.number_of_nodes(),
            graph.number_of_edges(),
        )
        return cls(graph)

    # ------------------------------------------------------------------
    # Lookups
    # ------------------------------------------------------------------

    @property
    def nx_graph(self) -> nx.Graph:
        """Read-only (frozen) networkx view"""
        return self._graph

    @property
    def nodes(self) -> Tuple[str, ...]:
        return self._nodes

    def __contains__(self, node: object) -> bool:
        return node in self._rho

    def __len__(self) -> int:
        return len(self._nodes)

    def number_of_nodes(self) -> int:
        return len(self._nodes)

    def number_of_edges(self) -> int:
        """Symmetric pairs, each counted once"""
        return self._graph.number_of_edges()

    def directed_edge_count(self) -> int:
        """Number of directed (i, j) records, i.e. twice the symmetric pairs"""
        return 2 * self._graph.number_of_edges()

    def require(self, node: str) -> None:
        if node not in self._rho:
            raise UnknownNodeError(node)

    def rho(self, node: str) -> float:
        try:
            return self._rho[node]
        except KeyError:
            raise UnknownNodeError(node) from None

    def neighbors(self, node: str) -> Tuple[str, ...]:
        try:
            return self._adjacency[node]
        except KeyError:
            raise UnknownNodeError(node) from None

    def degree(self, node: str) -> int:
        return len(self.neighbors(node))

    def has_edge(self, u: str, v: str) -> bool:
        return self._graph.has_edge(u, v)

    def edge_values(self, u: str, v: str) -> Tuple[float, float]:
        """(trust, intimacy) of the pair, identical in both directions"""
        try:
            data = self._graph.adj[u][v]
        except KeyError:
            raise MissingEdgeError(u, v) from None
        return data["trust"], data["intimacy"]

    def trust(self, u: str, v: str) -> float:
        return self.edge_values(u, v)[0]

    def intimacy(self, u: str, v: str) -> float:
        return self.edge_values(u, v)[1]

    def edge(self, u: str, v: str) -> TrustEdge:
        trust, intimacy = self.edge_values(u, v)
        return TrustEdge(source=u, target=v, trust=trust, intimacy=intimacy)

    def participants(self) -> List[Participant]:
        return [Participant(id=n, rho=self._rho[n]) for n in self._nodes]

    def edges(self) -> List[TrustEdge]:
        """Each symmetric pair once, lower endpoint first, in node order"""
        records = []
        for u in self._nodes:
            for v in self._adjacency[u]:
                if node_sort_key(u) < node_sort_key(v):
                    records.append(self.edge(u, v))
        return records

    def restricted(self, nodes: Iterable[str], edges: Iterable[Tuple[str, str]]) -> "SocialGraph":
        """Copy of the graph keeping only the given nodes and pairs"""
        keep = set(nodes)
        graph = nx.Graph()
        for n in self._nodes:
            if n in keep:
                graph.add_node(n, rho=self._rho[n])
        for u, v in edges:
            if u not in keep or v not in keep:
                raise GraphError(f"edge {u!r}-{v!r} leaves the kept node set")
            trust, intimacy = self.edge_values(u, v)
            graph.add_edge(u, v, trust=trust, intimacy=intimacy)
        return SocialGraph(graph)

    def __repr__(self) -> str:
        return f"SocialGraph(nodes={self.number_of_nodes()}, pairs={self.number_of_edges()})"
