"""
Shared fixtures: the four-node diamond graph and seeded small instances
"""

from typing import Dict, Iterable, List, Tuple

import numpy as np
import pytest

from src.graph import SocialGraph, SubNetwork, extract_subnetwork, generate_graph
from src.models import (
    DEFAULT_CONSTRAINTS,
    DEFAULT_WEIGHTS,
    GeneratorSpec,
    Participant,
    QoTConstraints,
    QoTWeights,
    TrustEdge,
)

EdgeSpec = Tuple[str, str, float, float]


def make_graph(rhos: Dict[str, float], edges: Iterable[EdgeSpec]) -> SocialGraph:
    participants = [Participant(id=n, rho=r) for n, r in rhos.items()]
    records = [TrustEdge(source=u, target=v, trust=t, intimacy=i) for u, v, t, i in edges]
    return SocialGraph.from_records(participants, records)


def random_instances(
    count: int, nodes: int = 10, edges: int = 20, max_hops: int = 6, seed: int = 0
) -> List[SubNetwork]:
    """Seeded random instances whose source and target are joined within ``max_hops``"""
    rng = np.random.default_rng(seed)
    instances: List[SubNetwork] = []
    graph_seed = 0
    while len(instances) < count:
        spec = GeneratorSpec(node_count=nodes, edge_count=edges, seed=seed * 100_000 + graph_seed)
        graph = generate_graph(spec)
        graph_seed += 1
        i, j = rng.choice(nodes, size=2, replace=False)
        sub = extract_subnetwork(graph, str(i), str(j), max_hops)
        if not sub.is_empty:
            instances.append(sub)
    return instances


@pytest.fixture
def diamond_graph() -> SocialGraph:
    """Participants 1-4 with trust pairs 1-2, 1-3, 2-4, 3-4"""
    return make_graph(
        {"1": 0.5, "2": 0.7, "3": 0.5, "4": 0.5},
        [
            ("1", "2", 0.9, 0.8),
            ("1", "3", 0.6, 0.9),
            ("2", "4", 0.7, 0.6),
            ("3", "4", 0.8, 0.5),
        ],
    )


@pytest.fixture
def diamond_sub(diamond_graph) -> SubNetwork:
    return extract_subnetwork(diamond_graph, "1", "4", 2)


@pytest.fixture
def weights() -> QoTWeights:
    return DEFAULT_WEIGHTS


@pytest.fixture
def constraints() -> QoTConstraints:
    return DEFAULT_CONSTRAINTS


@pytest.fixture
def small_instances() -> List[SubNetwork]:
    return random_instances(10)


@pytest.fixture
def greedy_trap_sub() -> SubNetwork:
    """
    m's own min-delta route m-y-d turns infeasible once s's prefix lowers the
    rho mean, while the longer s-m-x-z-d stays feasible
    """
    graph = make_graph(
        {"s": 0.5, "m": 0.05, "y": 0.5, "x": 0.45, "z": 0.45, "d": 0.5},
        [
            ("s", "m", 1, 1),
            ("m", "y", 1, 1),
            ("y", "d", 1, 1),
            ("m", "x", 1, 1),
            ("x", "z", 1, 1),
            ("z", "d", 1, 1),
        ],
    )
    return extract_subnetwork(graph, "s", "d", 6)
