"""
Seeded synthetic trust graphs and random QoT assignment for bare edge lists
"""

import logging
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..models import GeneratorSpec, Participant, QoTDistribution, TrustEdge, UniformRange
from .social_graph import GraphFormatError, SocialGraph

logger = logging.getLogger(__name__)


def _draw_open_closed(rng: np.random.Generator, r: UniformRange, size: int) -> np.ndarray:
    # (low, high]: keeps trust and intimacy strictly positive
    return r.high - rng.random(size) * (r.high - r.low)


def _draw_closed_open(rng: np.random.Generator, r: UniformRange, size: int) -> np.ndarray:
    return r.low + rng.random(size) * (r.high - r.low)


def _assign_qot(
    node_ids: List[str],
    pairs: List[Tuple[str, str]],
    distribution: QoTDistribution,
    rng: np.random.Generator,
) -> SocialGraph:
    rho = _draw_closed_open(rng, distribution.rho, len(node_ids))
    trust = _draw_open_closed(rng, distribution.trust, len(pairs))
    intimacy = _draw_open_closed(rng, distribution.intimacy, len(pairs))
    participants = [Participant(id=n, rho=float(r)) for n, r in zip(node_ids, rho)]
    edges = [
        TrustEdge(source=u, target=v, trust=float(t), intimacy=float(i))
        for (u, v), t, i in zip(pairs, trust, intimacy)
    ]
    return SocialGraph.from_records(participants, edges)


def generate_graph(spec: GeneratorSpec) -> SocialGraph:
    """
    Generate a random symmetric trust graph

    Node ids are ``"0" .. str(node_count - 1)``; exactly ``edge_count``
    distinct pairs are drawn without replacement. The result is a pure
    function of ``spec`` (seed included).
    """
    rng = np.random.default_rng(spec.seed)
    n = spec.node_count
    node_ids = [str(i) for i in range(n)]

    upper_i, upper_j = np.triu_indices(n, k=1)
    chosen = np.sort(rng.choice(upper_i.size, size=spec.edge_count, replace=False))
    pairs = [(node_ids[upper_i[k]], node_ids[upper_j[k]]) for k in chosen]

    graph = _assign_qot(node_ids, pairs, spec.qot_distribution, rng)
    logger.debug("Generated %r with seed %d", graph, spec.seed)
    return graph


def graph_from_edge_list(
    document: str,
    distribution: Optional[QoTDistribution] = None,
    seed: int = 0,
) -> SocialGraph:
    """
    Build a trust graph from a bare ``u v`` edge list (SNAP/Enron style)

    Self-loops and repeated pairs are dropped; QoT values are drawn from
    ``distribution`` with a seeded generator, nodes in order of first appearance.
    """
    distribution = distribution or QoTDistribution()
    order: Dict[str, None] = {}
    pairs: Dict[frozenset, Tuple[str, str]] = {}
    dropped = 0

    for lineno, raw in enumerate(document.splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] in "#%":
            continue
        tokens = line.split()
        if len(tokens) < 2:
            raise GraphFormatError("expected '<from> <to>'", lineno)
        u, v = tokens[0], tokens[1]
        order.setdefault(u)
        order.setdefault(v)
        key = frozenset((u, v))
        if u == v or key in pairs:
            dropped += 1
            continue
        pairs[key] = (u, v)

    if dropped:
        logger.info("Dropped %d self-loops or repeated pairs from the edge list", dropped)
    rng = np.random.default_rng(seed)
    return _assign_qot(list(order), list(pairs.values()), distribution, rng)
