"""
State space shared by the annealers: path energy, pruned neighborhoods and
plus-minus moves over valid trust paths
"""

import logging
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from ..graph import SubNetwork, TrustPath, neighbors_pruned
from ..models import OptResult, QoTConstraints, QoTWeights
from ..qot import aggregate, constraint_penalty, is_feasible, utility

logger = logging.getLogger(__name__)


def path_energy(
    path: Sequence[str],
    sub: SubNetwork,
    w: QoTWeights,
    c: QoTConstraints,
    beta: float,
) -> float:
    """(1 - F) plus ``beta`` times the relative constraint shortfall; zero penalty iff feasible"""
    q = aggregate(path, sub)
    return (1.0 - utility(q, w)) + beta * constraint_penalty(q, c)


class PathScore(NamedTuple):
    energy: float
    utility: float
    feasible: bool


class PathEvaluator:
    """Memoised energy/utility/feasibility of paths for one solve"""

    def __init__(self, sub: SubNetwork, weights: QoTWeights, constraints: QoTConstraints, beta: float):
        self.sub = sub
        self.weights = weights
        self.constraints = constraints
        self.beta = beta
        self._cache: Dict[TrustPath, PathScore] = {}

    def __call__(self, path: TrustPath) -> PathScore:
        score = self._cache.get(path)
        if score is None:
            q = aggregate(path, self.sub)
            u = utility(q, self.weights)
            energy = (1.0 - u) + self.beta * constraint_penalty(q, self.constraints)
            score = PathScore(energy, u, is_feasible(q, self.constraints))
            self._cache[path] = score
        return score

    def energy(self, path: TrustPath) -> float:
        return self(path).energy

    def __len__(self) -> int:
        return len(self._cache)


class PrunedNeighborhood:
    """Static neighborhood pruning: the M best-ranked neighbors of every node"""

    def __init__(self, sub: SubNetwork, M: int, weights: QoTWeights):
        self.M = M
        self._lists: Dict[str, Tuple[str, ...]] = {
            n: tuple(neighbors_pruned(sub.graph, n, M, weights)) for n in sub.graph.nodes
        }

    def __getitem__(self, node: str) -> Tuple[str, ...]:
        return self._lists.get(node, ())


def _pick(options: List, rng: np.random.Generator):
    return options[int(rng.integers(len(options)))]


def _substitute(path: TrustPath, sub: SubNetwork, hood: PrunedNeighborhood, rng) -> Optional[TrustPath]:
    on_path = set(path)
    choices = []
    for i in range(1, len(path) - 1):
        succ = path[i + 1]
        cands = [u for u in hood[path[i - 1]] if u not in on_path and sub.graph.has_edge(u, succ)]
        if cands:
            choices.append((i, cands))
    if not choices:
        return None
    i, cands = _pick(choices, rng)
    return path[:i] + (_pick(cands, rng),) + path[i + 1:]


def _minus(path: TrustPath, sub: SubNetwork, hood: PrunedNeighborhood, rng) -> Optional[TrustPath]:
    options = [i for i in range(1, len(path) - 1) if sub.graph.has_edge(path[i - 1], path[i + 1])]
    if not options:
        return None
    i = _pick(options, rng)
    return path[:i] + path[i + 1:]


def _plus(path: TrustPath, sub: SubNetwork, hood: PrunedNeighborhood, rng) -> Optional[TrustPath]:
    if len(path) - 1 >= sub.max_hops:
        return None
    on_path = set(path)
    options = [
        (i, u)
        for i in range(len(path) - 1)
        for u in hood[path[i]]
        if u not in on_path and sub.graph.has_edge(u, path[i + 1])
    ]
    if not options:
        return None
    i, u = _pick(options, rng)
    return path[: i + 1] + (u,) + path[i + 1:]


# Fallback order when the drawn primitive has no legal realization
_PRIMITIVES: Tuple[Callable, ...] = (_substitute, _minus, _plus)


def propose_move(
    path: TrustPath,
    sub: SubNetwork,
    neighborhood: PrunedNeighborhood,
    rng: np.random.Generator,
) -> TrustPath:
    """
    One plus-minus perturbation: substitute, minus or plus, drawn uniformly.
    Falls through the remaining primitives in fixed order; returns ``path``
    unchanged when none applies.
    """
    first = int(rng.integers(len(_PRIMITIVES)))
    for offset in range(len(_PRIMITIVES)):
        moved = _PRIMITIVES[(first + offset) % len(_PRIMITIVES)](path, sub, neighborhood, rng)
        if moved is not None:
            return moved
    return path


def random_initial_path(
    sub: SubNetwork, rng: np.random.Generator, attempts: int = 1000
) -> Optional[TrustPath]:
    """Depth-bounded random walk source→target that only enters nodes still able to reach the target"""
    if sub.is_empty:
        return None
    dist = sub.distance_to_target
    for _ in range(attempts):
        path = [sub.source]
        visited = {sub.source}
        while path[-1] != sub.target:
            remaining = sub.max_hops - (len(path) - 1)
            cands = [
                v
                for v in sub.graph.neighbors(path[-1])
                if v not in visited and dist.get(v, remaining) <= remaining - 1
            ]
            if not cands:
                break
            nxt = _pick(cands, rng)
            path.append(nxt)
            visited.add(nxt)
        else:
            return tuple(path)
    logger.debug("No random walk reached the target in %d attempts", attempts)
    return None


class BestPath:
    """Best feasible path seen so far; only strictly better utilities replace it"""

    def __init__(self) -> None:
        self.path: Optional[TrustPath] = None
        self.utility: Optional[float] = None

    def offer(self, path: TrustPath, score: PathScore) -> bool:
        if not score.feasible:
            return False
        if self.utility is None or score.utility > self.utility:
            self.path = path
            self.utility = score.utility
            return True
        return False

    def result(self) -> OptResult:
        if self.path is None or self.utility is None:
            return OptResult.infeasible()
        return OptResult.found(self.path, self.utility)
