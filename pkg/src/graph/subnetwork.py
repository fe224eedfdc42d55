"""
Hop-bounded subnetwork between a source and a target, and neighborhood pruning
"""

import logging
import os
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

import networkx as nx

from ..models import QoTWeights
from .social_graph import GraphError, SocialGraph, node_sort_key

logger = logging.getLogger(__name__)

TrustPath = Tuple[str, ...]


class PathLimitExceeded(RuntimeError):
    def __init__(self, limit: int):
        self.limit = limit
        super().__init__(f"more than {limit} simple paths; instance too large for exhaustive search")


class InvalidPathError(GraphError):
    pass


def default_path_limit() -> int:
    return int(os.getenv("ORACLE_PATH_LIMIT", "1000000"))


def hop_distances(graph: SocialGraph, origin: str, max_hops: int) -> Dict[str, int]:
    """BFS hop counts from ``origin``, truncated at ``max_hops``"""
    if origin not in graph:
        return {}
    return dict(nx.single_source_shortest_path_length(graph.nx_graph, origin, cutoff=max_hops))


def iter_simple_paths(
    graph: SocialGraph,
    source: str,
    target: str,
    max_hops: int,
    distance_to_target: Optional[Dict[str, int]] = None,
    limit: Optional[int] = None,
) -> Iterator[TrustPath]:
    """
    Yield every simple source→target path with at most ``max_hops`` edges

    Paths come out in lexicographic node order. Branches that cannot reach
    the target within the remaining hop budget are never entered.

    Raises:
        PathLimitExceeded: when more than ``limit`` paths exist
    """
    if source not in graph or target not in graph or source == target:
        return
    dist = distance_to_target if distance_to_target is not None else hop_distances(graph, target, max_hops)
    if source not in dist:
        return

    path: List[str] = [source]
    visited: Set[str] = {source}
    count = 0

    def extend(remaining: int) -> Iterator[TrustPath]:
        for v in graph.neighbors(path[-1]):
            if v in visited:
                continue
            dv = dist.get(v)
            if dv is None or dv > remaining - 1:
                continue
            if v == target:
                yield tuple(path) + (v,)
                continue
            path.append(v)
            visited.add(v)
            yield from extend(remaining - 1)
            path.pop()
            visited.discard(v)

    for found in extend(max_hops):
        count += 1
        if limit is not None and count > limit:
            raise PathLimitExceeded(limit)
        yield found


class SubNetwork:
    """The part of a graph lying on hop-bounded simple source→target paths"""

    def __init__(self, graph: SocialGraph, source: str, target: str, max_hops: int):
        self.graph = graph
        self.source = source
        self.target = target
        self.max_hops = max_hops
        self.distance_to_target: Dict[str, int] = hop_distances(graph, target, max_hops)

    @property
    def is_empty(self) -> bool:
        return self.source not in self.graph

    def number_of_nodes(self) -> int:
        return self.graph.number_of_nodes()

    def hops(self, path: Sequence[str]) -> int:
        return len(path) - 1

    def path_problems(self, path: Sequence[str]) -> List[str]:
        problems = []
        if len(path) < 2:
            problems.append("a path needs at least two nodes")
            return problems
        if path[0] != self.source or path[-1] != self.target:
            problems.append(f"path must run from {self.source!r} to {self.target!r}")
        if len(set(path)) != len(path):
            problems.append("path repeats a node")
        if len(path) - 1 > self.max_hops:
            problems.append(f"path has {len(path) - 1} hops, budget is {self.max_hops}")
        for u, v in zip(path, path[1:]):
            if not self.graph.has_edge(u, v):
                problems.append(f"no edge {u!r}-{v!r} in the subnetwork")
        return problems

    def is_valid_path(self, path: Sequence[str]) -> bool:
        return not self.path_problems(path)

    def validate_path(self, path: Sequence[str]) -> TrustPath:
        problems = self.path_problems(path)
        if problems:
            raise InvalidPathError("; ".join(problems))
        return tuple(path)

    def __repr__(self) -> str:
        return (
            f"SubNetwork({self.source!r}->{self.target!r}, max_hops={self.max_hops}, "
            f"nodes={self.graph.number_of_nodes()}, pairs={self.graph.number_of_edges()})"
        )


def extract_subnetwork(
    graph: SocialGraph,
    source: str,
    target: str,
    max_hops: int,
    limit: Optional[int] = None,
) -> SubNetwork:
    """
    Extract the nodes and pairs lying on at least one simple source→target path
    of at most ``max_hops`` edges. An empty result is returned (``is_empty``)
    when no such path exists.
    """
    graph.require(source)
    graph.require(target)
    if source == target:
        raise ValueError("source and target must differ")
    if max_hops < 1:
        raise ValueError("max_hops must be at least 1")

    dist = hop_distances(graph, target, max_hops)
    nodes: Set[str] = set()
    pairs: Set[Tuple[str, str]] = set()
    path_count = 0
    for path in iter_simple_paths(graph, source, target, max_hops, dist, limit):
        path_count += 1
        nodes.update(path)
        for u, v in zip(path, path[1:]):
            pairs.add((u, v) if node_sort_key(u) < node_sort_key(v) else (v, u))

    ordered = sorted(pairs, key=lambda p: (node_sort_key(p[0]), node_sort_key(p[1])))
    restricted = graph.restricted(nodes, ordered)
    sub = SubNetwork(restricted, source, target, max_hops)
    logger.debug("Extracted %r from %d paths", sub, path_count)
    return sub


def neighbors_pruned(graph: SocialGraph, node: str, M: int, weights: QoTWeights) -> List[str]:
    """
    At most ``M`` neighbors of ``node`` ranked by single-edge utility
    ``w_T*trust + w_r*intimacy + w_rho*rho(neighbor)``, ties by node id
    """
    if M < 1:
        raise ValueError("M must be at least 1")
    scored = []
    for u in graph.neighbors(node):
        trust, intimacy = graph.edge_values(node, u)
        score = weights.w_T * trust + weights.w_r * intimacy + weights.w_rho * graph.rho(u)
        scored.append((-score, node_sort_key(u), u))
    scored.sort()
    return [u for _, _, u in scored[:M]]
