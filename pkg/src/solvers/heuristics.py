"""
Heuristic baselines: MFPB_HOSTP (backward min-delta labels, forward greedy
search with foreseen-path pruning) and a two-pass H_MCOP-style search
"""

import logging
from collections import defaultdict
from typing import Callable, Dict, Hashable, Iterator, List, NamedTuple, Optional, Set, Tuple

from pydantic import BaseModel, ConfigDict

from ..graph import SubNetwork, TrustPath, node_sort_key, path_sort_key
from ..models import OptResult, QoTConstraints, QoTVector, QoTWeights
from ..qot import aggregate, delta, g_lambda, is_feasible, utility

logger = logging.getLogger(__name__)

CostFn = Callable[[QoTVector], float]

# Labels kept before the search stops separating labels by node set
LABEL_LIMIT = 50_000


class BackwardEntry(BaseModel):
    """Recorded backward local path from ``node`` to the target"""

    model_config = ConfigDict(frozen=True)

    node: str
    cost: float
    qot_to_target: QoTVector
    path: TrustPath

    @property
    def next_hop(self) -> str:
        return self.path[1]

    @property
    def hops(self) -> int:
        return len(self.path) - 1

    @property
    def best_delta(self) -> float:
        return self.cost


class _Label(NamedTuple):
    path: TrustPath
    trust: float
    intimacy: float
    rho_sum: float

    def qot(self) -> QoTVector:
        middle = len(self.path) - 2
        rho = self.rho_sum / middle if middle > 0 else 1.0
        return QoTVector(T_p=self.trust, r_p=self.intimacy, rho_p=rho)


class BackwardTable:
    """One recorded label per reached node; the target itself carries no entry"""

    def __init__(self, target: str, entries: Dict[str, BackwardEntry]):
        self.target = target
        self._entries = entries

    def __contains__(self, node: object) -> bool:
        return node in self._entries

    def __getitem__(self, node: str) -> BackwardEntry:
        return self._entries[node]

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[str]:
        return iter(self._entries)

    def get(self, node: str) -> Optional[BackwardEntry]:
        return self._entries.get(node)

    def path_from(self, node: str) -> TrustPath:
        if node == self.target:
            return (node,)
        return self._entries[node].path


class SearchStats(BaseModel):
    restarts: int = 0
    deletions: int = 0


def _pareto(labels: List[_Label], group: Callable[[_Label], Hashable]) -> List[_Label]:
    """Drop every label matched or beaten on trust, intimacy and rho sum by one of its group"""
    kept: Dict[Hashable, List[_Label]] = defaultdict(list)
    ordered = sorted(labels, key=lambda lb: (-lb.trust, -lb.intimacy, -lb.rho_sum, path_sort_key(lb.path)))
    for label in ordered:
        rivals = kept[group(label)]
        if any(r.intimacy >= label.intimacy and r.rho_sum >= label.rho_sum for r in rivals):
            continue
        rivals.append(label)
    return [label for rivals in kept.values() for label in rivals]


def _label_search(sub: SubNetwork, cost_fn: CostFn, label_limit: int = LABEL_LIMIT) -> BackwardTable:
    """
    Multi-label search from the target over reversed edges, one hop level at a time

    Neither delta nor g_lambda is edge-additive and the mean rho can improve
    as a path grows, so a node keeps several labels per hop count. Two labels
    of one node, hop count and node set accept the same extensions, which
    makes dropping the dominated one exact. Once more than ``label_limit``
    labels would be held, later levels compare labels across node sets too.
    Labels are never extended through the source. Each node records its
    cheapest label (ties: fewer hops, then lexicographic path).
    """
    g = sub.graph
    source, target = sub.source, sub.target
    entries: Dict[str, BackwardEntry] = {}
    if target not in g:
        return BackwardTable(target, entries)

    frontier = [_Label((target,), 1.0, 1.0, 0.0)]
    held = 0
    exact = True
    for _ in range(sub.max_hops):
        candidates: Dict[str, List[_Label]] = defaultdict(list)
        for label in frontier:
            v = label.path[0]
            if v == source:
                continue
            via_rho = 0.0 if v == target else g.rho(v)
            for u in g.neighbors(v):
                if u in label.path:
                    continue
                trust, intimacy = g.edge_values(u, v)
                candidates[u].append(
                    _Label(
                        path=(u,) + label.path,
                        trust=trust * label.trust,
                        intimacy=intimacy * label.intimacy,
                        rho_sum=label.rho_sum + via_rho,
                    )
                )
        if not candidates:
            break
        if exact and held + sum(len(c) for c in candidates.values()) > label_limit:
            exact = False
            logger.warning("Backward search holds over %d labels, comparing across node sets", label_limit)

        frontier = []
        for u in sorted(candidates, key=node_sort_key):
            kept = _pareto(candidates[u], (lambda lb: frozenset(lb.path)) if exact else (lambda lb: None))
            frontier.extend(kept)
            for label in kept:
                q = label.qot()
                cost = cost_fn(q)
                best = entries.get(u)
                if best is None or (cost, len(label.path), path_sort_key(label.path)) < (
                    best.cost,
                    len(best.path),
                    path_sort_key(best.path),
                ):
                    entries[u] = BackwardEntry(node=u, cost=cost, qot_to_target=q, path=label.path)
        held += len(frontier)

    return BackwardTable(target, entries)


def backward_search(sub: SubNetwork, c: QoTConstraints, label_limit: int = LABEL_LIMIT) -> BackwardTable:
    """Minimum-delta backward local path from every reached node to the target"""
    table = _label_search(sub, lambda q: delta(q, c), label_limit)
    logger.debug("Backward search labelled %d nodes", len(table))
    return table


def _foreseen(path: List[str], m: str, table: BackwardTable) -> TrustPath:
    return tuple(path) + table.path_from(m)


def _within_budget(candidate: TrustPath, sub: SubNetwork) -> bool:
    return len(set(candidate)) == len(candidate) and len(candidate) - 1 <= sub.max_hops


def forward_search(
    sub: SubNetwork,
    w: QoTWeights,
    c: QoTConstraints,
    table: BackwardTable,
    stats: Optional[SearchStats] = None,
) -> OptResult:
    """
    Greedy forward search from the source guided by foreseen paths

    At each frontier node the neighbor with the highest partial utility is
    tried first. When its foreseen path is infeasible (or not simple within the
    hop budget) the link into it is removed from the working copy and the
    search restarts from the source; dead ends remove the link into the stuck
    node. Returns the first completed path or infeasible-instance.
    """
    stats = stats if stats is not None else SearchStats()
    if sub.is_empty:
        return OptResult.no_path()
    g = sub.graph
    source, target = sub.source, sub.target
    removed: Set[Tuple[str, str]] = set()

    while True:
        path = [source]
        while path[-1] != target:
            u = path[-1]
            on_path = set(path)
            candidates = [
                m
                for m in g.neighbors(u)
                if m not in on_path and (u, m) not in removed and (m == target or m in table)
            ]
            if not candidates:
                if u == source:
                    logger.debug("Forward search exhausted after %d restarts", stats.restarts)
                    return OptResult.infeasible()
                removed.add((path[-2], u))
                break
            ranked = sorted(
                candidates,
                key=lambda m: (-utility(aggregate(path + [m], sub), w), node_sort_key(m)),
            )
            m = ranked[0]
            foreseen = _foreseen(path, m, table)
            if not _within_budget(foreseen, sub) or not is_feasible(aggregate(foreseen, sub), c):
                removed.add((u, m))
                break
            path.append(m)
        else:
            return OptResult.found(path, utility(aggregate(path, sub), w))
        stats.deletions += 1
        stats.restarts += 1


def mfpb_hostp(
    sub: SubNetwork,
    w: QoTWeights,
    c: QoTConstraints,
    stats: Optional[SearchStats] = None,
    label_limit: int = LABEL_LIMIT,
) -> OptResult:
    """Backward search, the min-delta feasibility gate, then forward search"""
    if sub.is_empty:
        return OptResult.no_path()
    table = backward_search(sub, c, label_limit)
    entry = table.get(sub.source)
    if entry is None or entry.cost > 1.0:
        logger.debug("Backward gate rejects %s->%s", sub.source, sub.target)
        return OptResult.infeasible()
    return forward_search(sub, w, c, table, stats)


def h_mcop(
    sub: SubNetwork,
    w: QoTWeights,
    c: QoTConstraints,
    lam: float = 1.0,
    label_limit: int = LABEL_LIMIT,
) -> OptResult:
    """
    Two-pass H_MCOP-style search

    Pass 1 labels every node with its minimum g_lambda backward path and
    rejects the instance when the source's g_1 exceeds 3. Pass 2 walks
    forward from the source, preferring the feasible foreseen path of highest
    utility and otherwise the foreseen path of smallest g_lambda. The best
    feasible foreseen path met on the way is returned.
    """
    if lam < 1:
        raise ValueError("lambda must be at least 1")
    if sub.is_empty:
        return OptResult.no_path()
    table = _label_search(sub, lambda q: g_lambda(q, c, lam), label_limit)
    entry = table.get(sub.source)
    if entry is None or g_lambda(entry.qot_to_target, c, 1.0) > 3.0:
        return OptResult.infeasible()

    g = sub.graph
    best: Optional[Tuple[float, TrustPath]] = None
    path = [sub.source]
    while path[-1] != sub.target:
        on_path = set(path)
        scored = []
        for m in g.neighbors(path[-1]):
            if m in on_path or not (m == sub.target or m in table):
                continue
            foreseen = _foreseen(path, m, table)
            if not _within_budget(foreseen, sub):
                continue
            q = aggregate(foreseen, sub)
            scored.append((m, foreseen, q))
        if not scored:
            break

        feasible = [(m, f, utility(q, w)) for m, f, q in scored if is_feasible(q, c)]
        for _, f, u in feasible:
            if best is None or u > best[0]:
                best = (u, f)
        if feasible:
            step = min(feasible, key=lambda item: (-item[2], node_sort_key(item[0])))[0]
        else:
            step = min(scored, key=lambda item: (g_lambda(item[2], c, lam), node_sort_key(item[0])))[0]
        path.append(step)

    if best is None:
        return OptResult.infeasible()
    return OptResult.found(best[1], best[0])
