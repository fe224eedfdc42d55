"""
Simulated annealing over valid trust paths with geometric cooling
"""

import logging
import math
import sys
import time
from typing import List, Optional

import numpy as np

from ..graph import SubNetwork, TrustPath
from ..models import OptResult, QoTConstraints, QoTWeights, SaParams, SolveOutcome, StepTrace
from .landscape import (
    BestPath,
    PathEvaluator,
    PrunedNeighborhood,
    path_energy,
    propose_move,
    random_initial_path,
)

logger = logging.getLogger(__name__)

__all__ = ["initial_path", "path_energy", "sa_accept", "sa_solve"]


def sa_accept(e_cur: float, e_new: float, t: float, rng: np.random.Generator) -> bool:
    """Metropolis criterion at control temperature ``t``"""
    if t <= 0:
        raise ValueError("temperature must be positive")
    if e_new <= e_cur:
        return True
    return bool(rng.random() < math.exp((e_cur - e_new) / t))


def initial_path(
    sub: SubNetwork,
    evaluate: PathEvaluator,
    best: BestPath,
    params: SaParams,
    rng: np.random.Generator,
) -> Optional[TrustPath]:
    """
    Lowest-energy path among ``init_samples`` random walks

    Every sampled walk is offered to ``best``. Returns None when no walk
    reaches the target.
    """
    start: Optional[TrustPath] = None
    for _ in range(params.init_samples):
        path = random_initial_path(sub, rng, params.init_attempts)
        if path is None:
            return None
        score = evaluate(path)
        best.offer(path, score)
        if start is None or score.energy < evaluate(start).energy:
            start = path
    return start


def sa_solve(sub: SubNetwork, w: QoTWeights, c: QoTConstraints, params: SaParams) -> SolveOutcome:
    """
    Anneal from the best of a few random valid paths, ``moves_per_step``
    proposals per step, multiplying the temperature by ``cooling`` after each
    step. Returns the best feasible path ever visited.
    """
    started = time.perf_counter()
    rng = np.random.default_rng(params.seed)
    evaluate = PathEvaluator(sub, w, c, params.penalty_beta)
    best = BestPath()
    current = initial_path(sub, evaluate, best, params, rng)
    if current is None:
        return SolveOutcome(
            result=OptResult.no_path(), solver_id="sa", wall_time=time.perf_counter() - started
        )

    neighborhood = PrunedNeighborhood(sub, params.M, w)
    e_cur = evaluate.energy(current)

    t = params.t0
    attempted = accepted = 0
    trace: List[StepTrace] = []
    for step in range(params.max_steps):
        for _ in range(params.moves_per_step):
            candidate = propose_move(current, sub, neighborhood, rng)
            score = evaluate(candidate)
            attempted += 1
            if sa_accept(e_cur, score.energy, t, rng):
                accepted += 1
                current, e_cur = candidate, score.energy
                best.offer(current, score)
        if params.record_trace:
            trace.append(StepTrace(step=step, temperature=t, best_utility=best.utility))
        # geometric cooling stops at the smallest normal float
        t = max(t * params.cooling, sys.float_info.min)

    logger.debug("SA accepted %d of %d moves, best utility %s", accepted, attempted, best.utility)
    return SolveOutcome(
        result=best.result(),
        solver_id="sa",
        steps_executed=params.max_steps,
        moves_attempted=attempted,
        moves_accepted=accepted,
        wall_time=time.perf_counter() - started,
        trace=trace,
    )
