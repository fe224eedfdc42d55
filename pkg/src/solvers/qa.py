"""
Path-integral Monte Carlo quantum annealing over ring-coupled path replicas

Each replica holds a valid trust path and its spin vector over the symmetric
edge slots of the subnetwork (+1 on traversed edges, -1 elsewhere). Replicas
evolve under plus-minus moves accepted by Metropolis on the effective
classical Hamiltonian

    H = mean(H_pot) - J_T * sum_rho <S_rho, S_rho+1>    (ring, rho = P wraps to 1)

with J_T derived from a hyperbolically decaying transverse field.
"""

import logging
import math
import time
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from ..graph import MissingEdgeError, SocialGraph, SubNetwork, TrustPath, node_sort_key
from ..models import OptResult, QaParams, QoTConstraints, QoTWeights, SolveOutcome, StepTrace
from .landscape import (
    BestPath,
    PathEvaluator,
    PathScore,
    PrunedNeighborhood,
    path_energy,
    propose_move,
    random_initial_path,
)

logger = logging.getLogger(__name__)

SpinVector = np.ndarray


# =============================================================================
# Transverse field and replica coupling
# =============================================================================


def gamma_schedule(t: float, eta: float, gamma0: float, xi: float) -> float:
    """Hyperbolic decay (1 - t/eta) * zeta / (t/eta + xi) with zeta = gamma0 * xi"""
    if eta <= 0:
        raise ValueError("eta must be positive")
    if not 0 <= t <= eta:
        raise ValueError(f"step {t} outside [0, {eta}]")
    if t == 0:
        return gamma0
    if t >= eta:
        return 0.0
    s = t / eta
    return (1.0 - s) * (gamma0 * xi) / (s + xi)


def coupling_jt(gamma: float, P: int, T: float, jt_cap: float) -> float:
    """
    Inter-replica coupling -(T/2) ln tanh(gamma / (P T)), clamped to [ulp(0), ``jt_cap``]

    ln tanh x = ln(1 - u) - ln(1 + u) with u = exp(-2x); the first term goes
    through expm1 for small x and log1p for large x so neither side cancels.
    """
    if P < 2 or T <= 0:
        raise ValueError("coupling needs P >= 2 and T > 0")
    x = gamma / (P * T)
    if x <= 0:
        return jt_cap
    u = math.exp(-2.0 * x)
    if x < 0.5:
        one_minus_u = -math.expm1(-2.0 * x)
        if one_minus_u <= 0.0:
            return jt_cap
        log_one_minus_u = math.log(one_minus_u)
    else:
        log_one_minus_u = math.log1p(-u)
    jt = -0.5 * T * (log_one_minus_u - math.log1p(u))
    # exp(-2x) underflows to zero for x above ~372; the coupling stays positive
    return min(jt_cap, max(jt, math.ulp(0.0)))


# =============================================================================
# Spin encoding
# =============================================================================


class EdgeIndex:
    """Fixed slot order over the symmetric edge pairs of a graph"""

    def __init__(self, graph: SocialGraph):
        pairs = ((e.source, e.target) for e in graph.edges())
        self.pairs: Tuple[Tuple[str, str], ...] = tuple(
            sorted(pairs, key=lambda p: (node_sort_key(p[0]), node_sort_key(p[1])))
        )
        self._slots: Dict[Tuple[str, str], int] = {}
        for k, (u, v) in enumerate(self.pairs):
            self._slots[(u, v)] = k
            self._slots[(v, u)] = k

    def __len__(self) -> int:
        return len(self.pairs)

    def slot(self, u: str, v: str) -> int:
        try:
            return self._slots[(u, v)]
        except KeyError:
            raise MissingEdgeError(u, v) from None

    def path_slots(self, path: Sequence[str]) -> FrozenSet[int]:
        return frozenset(self.slot(u, v) for u, v in zip(path, path[1:]))


def encode_spins(path: Sequence[str], index: EdgeIndex) -> SpinVector:
    """
    +1 on the path's edge slots, -1 elsewhere

    Raises:
        MissingEdgeError: a path edge is not in the index
    """
    spins = np.full(len(index), -1, dtype=np.int64)
    for k in index.path_slots(path):
        spins[k] = 1
    return spins


def decode_edges(spins: SpinVector, index: EdgeIndex) -> FrozenSet[Tuple[str, str]]:
    return frozenset(index.pairs[k] for k in np.flatnonzero(spins > 0))


def decode_spins(spins: SpinVector, index: EdgeIndex, source: str, target: str) -> TrustPath:
    """
    Rebuild the simple source→target path whose edges carry +1

    Raises:
        ValueError: the +1 edges do not form a single simple path
    """
    adjacency: Dict[str, List[str]] = {}
    edges = decode_edges(spins, index)
    for u, v in edges:
        adjacency.setdefault(u, []).append(v)
        adjacency.setdefault(v, []).append(u)
    path = [source]
    previous: Optional[str] = None
    while path[-1] != target:
        onward = [n for n in adjacency.get(path[-1], []) if n != previous]
        if len(onward) != 1 or onward[0] in path:
            raise ValueError("spin configuration is not a simple path")
        previous = path[-1]
        path.append(onward[0])
    if len(path) - 1 != len(edges):
        raise ValueError("spin configuration has edges off the path")
    return tuple(path)


def state_label(
    spins: SpinVector, index: EdgeIndex, variables: Optional[Iterable[Tuple[str, str]]] = None
) -> str:
    """Ket-style bit string over ``variables`` (all slots by default), last variable first"""
    chosen = list(variables) if variables is not None else list(index.pairs)
    return "".join("1" if spins[index.slot(u, v)] > 0 else "0" for u, v in reversed(chosen))


def potential_energy(
    path: Sequence[str], sub: SubNetwork, w: QoTWeights, c: QoTConstraints, beta: float
) -> float:
    """Classical potential of one replica; same functional as the SA energy"""
    return path_energy(path, sub, w, c, beta)


# =============================================================================
# Replica system
# =============================================================================


class Replica(BaseModel):
    model_config = ConfigDict(frozen=True)

    path: TrustPath
    slots: FrozenSet[int]
    score: PathScore

    @property
    def energy(self) -> float:
        return self.score.energy


class ReplicaSystem:
    """P path replicas coupled in a ring; replica P couples back to replica 1"""

    def __init__(self, index: EdgeIndex, evaluate: PathEvaluator, paths: Sequence[TrustPath]):
        if len(paths) < 2:
            raise ValueError("a replica system needs at least two replicas")
        self.index = index
        self.evaluate = evaluate
        self.replicas: List[Replica] = []
        self.spins = np.empty((len(paths), len(index)), dtype=np.int64)
        for rho, path in enumerate(paths):
            path = tuple(path)
            self.spins[rho] = encode_spins(path, index)
            self.replicas.append(Replica(path=path, slots=index.path_slots(path), score=evaluate(path)))

    @property
    def P(self) -> int:
        return len(self.replicas)

    def path(self, rho: int) -> TrustPath:
        return self.replicas[rho].path

    def mean_potential(self) -> float:
        return sum(r.energy for r in self.replicas) / self.P

    def coupling_sum(self) -> int:
        """Sum over ring bonds of spin dot products (P=2 counts its single pair twice)"""
        return int(np.sum(self.spins * np.roll(self.spins, -1, axis=0)))

    def effective_hamiltonian(self, jt: float) -> float:
        return self.mean_potential() - jt * self.coupling_sum()

    def local_move_delta(self, rho: int, new_path: Sequence[str], jt: float) -> float:
        """Change of the effective Hamiltonian if replica ``rho`` moved to ``new_path``"""
        new_path = tuple(new_path)
        current = self.replicas[rho]
        d_pot = (self.evaluate(new_path).energy - current.energy) / self.P
        changed = current.slots.symmetric_difference(self.index.path_slots(new_path))
        if not changed:
            return d_pot
        idx = np.fromiter(changed, dtype=np.int64, count=len(changed))
        old = self.spins[rho, idx]
        ring = self.spins[(rho - 1) % self.P, idx] + self.spins[(rho + 1) % self.P, idx]
        d_coupling = int(np.sum(-2 * old * ring))
        return d_pot - jt * d_coupling

    def apply_move(self, rho: int, new_path: Sequence[str]) -> Replica:
        new_path = tuple(new_path)
        slots = self.index.path_slots(new_path)
        for k in self.replicas[rho].slots.symmetric_difference(slots):
            self.spins[rho, k] = -self.spins[rho, k]
        self.replicas[rho] = Replica(path=new_path, slots=slots, score=self.evaluate(new_path))
        return self.replicas[rho]

    def mean_adjacent_overlap(self) -> float:
        """Mean normalized spin overlap of ring-adjacent replicas, in [-1, 1]"""
        return self.coupling_sum() / (self.P * len(self.index))


def effective_hamiltonian(system: ReplicaSystem, jt: float) -> float:
    return system.effective_hamiltonian(jt)


def local_move_delta(system: ReplicaSystem, rho: int, new_path: Sequence[str], jt: float) -> float:
    return system.local_move_delta(rho, new_path, jt)


def qa_accept(delta_h: float, T: float, rng: np.random.Generator) -> bool:
    """Metropolis on the effective Hamiltonian at temperature ``T``"""
    if T <= 0:
        raise ValueError("temperature must be positive")
    if delta_h <= 0:
        return True
    return bool(rng.random() < math.exp(-delta_h / T))


# =============================================================================
# Annealing loop
# =============================================================================


def _temperature(params: QaParams, step: int, eta: int) -> float:
    if params.temperature_schedule == "fixed":
        return params.T
    t0 = params.initial_temperature
    return t0 + (params.T - t0) * step / eta


def qa_solve(sub: SubNetwork, w: QoTWeights, c: QoTConstraints, params: QaParams) -> SolveOutcome:
    """
    Anneal P replicas from independent random walks

    Replicas are first equilibrated at P*T on the potential alone. Each
    Monte Carlo step then lowers the transverse field, shuffles the replica
    order once and deals ``moves_multiplier * N`` proposals round-robin over
    it (N = subnetwork size; multiplied by P under the per-replica budget).
    The best feasible path held by any replica at any time is returned.
    """
    started = time.perf_counter()
    rng = np.random.default_rng(params.seed)
    P = params.P

    paths: List[TrustPath] = []
    for _ in range(P):
        path = random_initial_path(sub, rng, params.init_attempts)
        if path is None:
            return SolveOutcome(
                result=OptResult.no_path(), solver_id="qa", wall_time=time.perf_counter() - started
            )
        paths.append(path)

    evaluate = PathEvaluator(sub, w, c, params.penalty_beta)
    neighborhood = PrunedNeighborhood(sub, params.M, w)
    system = ReplicaSystem(EdgeIndex(sub.graph), evaluate, paths)
    best = BestPath()
    for replica in system.replicas:
        best.offer(replica.path, replica.score)

    warm_t = P * params.T
    warmup = 0
    for _ in range(params.warmup_sweeps):
        for rho in range(P):
            candidate = propose_move(system.path(rho), sub, neighborhood, rng)
            warmup += 1
            if qa_accept(evaluate(candidate).energy - system.replicas[rho].energy, warm_t, rng):
                best.offer(candidate, system.apply_move(rho, candidate).score)

    moves = params.moves_multiplier * sub.number_of_nodes()
    if params.move_budget == "per_replica":
        moves *= P
    eta = max(params.max_steps - 1, 1)
    attempted = accepted = 0
    trace: List[StepTrace] = []

    for step in range(params.max_steps):
        gamma = gamma_schedule(min(step, eta), eta, params.gamma0, params.xi)
        temperature = _temperature(params, min(step, eta), eta)
        jt = coupling_jt(gamma, P, temperature, params.jt_cap)
        order = rng.permutation(P)
        for k in range(moves):
            rho = int(order[k % P])
            candidate = propose_move(system.path(rho), sub, neighborhood, rng)
            attempted += 1
            if qa_accept(system.local_move_delta(rho, candidate, jt), temperature, rng):
                accepted += 1
                best.offer(candidate, system.apply_move(rho, candidate).score)
        if params.record_trace:
            trace.append(
                StepTrace(
                    step=step,
                    temperature=temperature,
                    best_utility=best.utility,
                    gamma=gamma,
                    jt=jt,
                    mean_overlap=system.mean_adjacent_overlap(),
                )
            )

    logger.debug(
        "QA %d replicas, %d steps: accepted %d of %d moves, best utility %s",
        P,
        params.max_steps,
        accepted,
        attempted,
        best.utility,
    )
    return SolveOutcome(
        result=best.result(),
        solver_id="qa",
        steps_executed=params.max_steps,
        moves_attempted=attempted,
        moves_accepted=accepted,
        warmup_moves=warmup,
        wall_time=time.perf_counter() - started,
        trace=trace,
    )
