"""
Path-selection solvers and the registry the CLI, harness and API dispatch through
"""

import logging
import time
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
from pydantic import BaseModel

from ..graph import SubNetwork
from ..models import SOLVER_IDS, QoTConstraints, QoTWeights, SolveOutcome, SolverConfig
from .heuristics import SearchStats, backward_search, forward_search, h_mcop, mfpb_hostp
from .oracle import enumerate_paths, optimal_path
from .qa import qa_solve
from .sa import sa_solve

logger = logging.getLogger(__name__)

Runner = Callable[[SubNetwork, QoTWeights, QoTConstraints, SolverConfig, int], SolveOutcome]


def child_seed(master_seed: int, *keys: int) -> int:
    """Deterministic 64-bit seed for the work item addressed by ``keys``"""
    sequence = np.random.SeedSequence(master_seed, spawn_key=tuple(keys))
    return int(sequence.generate_state(1, np.uint64)[0])


def _timed(run: Callable[[], SolveOutcome]) -> SolveOutcome:
    started = time.perf_counter()
    outcome = run()
    return outcome.model_copy(update={"wall_time": time.perf_counter() - started})


def _run_qa(sub, w, c, config: SolverConfig, seed: int) -> SolveOutcome:
    return qa_solve(sub, w, c, config.qa.model_copy(update={"seed": seed}))


def _run_sa(sub, w, c, config: SolverConfig, seed: int) -> SolveOutcome:
    return sa_solve(sub, w, c, config.sa.model_copy(update={"seed": seed}))


def _run_mfpb(sub, w, c, config: SolverConfig, seed: int) -> SolveOutcome:
    stats = SearchStats()
    result = mfpb_hostp(sub, w, c, stats)
    return SolveOutcome(result=result, solver_id="mfpb", steps_executed=stats.restarts + 1)


def _run_hmcop(sub, w, c, config: SolverConfig, seed: int) -> SolveOutcome:
    result = h_mcop(sub, w, c, config.hmcop_lambda)
    return SolveOutcome(result=result, solver_id="hmcop", steps_executed=1)


def _run_oracle(sub, w, c, config: SolverConfig, seed: int) -> SolveOutcome:
    result = optimal_path(sub, w, c, config.path_limit)
    return SolveOutcome(result=result, solver_id="oracle", steps_executed=1)


SOLVERS: Dict[str, Runner] = {
    "qa": _run_qa,
    "sa": _run_sa,
    "mfpb": _run_mfpb,
    "hmcop": _run_hmcop,
    "oracle": _run_oracle,
}


def run_solver(
    solver_id: str,
    sub: SubNetwork,
    w: QoTWeights,
    c: QoTConstraints,
    config: Optional[SolverConfig] = None,
    seed: int = 0,
) -> SolveOutcome:
    """Run one solver and time it; the seed only matters to the annealers"""
    try:
        runner = SOLVERS[solver_id]
    except KeyError:
        raise ValueError(f"unknown solver {solver_id!r}; expected one of {list(SOLVER_IDS)}") from None
    config = config or SolverConfig()
    outcome = _timed(lambda: runner(sub, w, c, config, seed))
    logger.debug("%s finished %s in %.3fs", solver_id, outcome.result.status.value, outcome.wall_time)
    return outcome


class RestartSummary(BaseModel):
    outcomes: List[SolveOutcome]
    best: SolveOutcome
    mean_best_utility: Optional[float]

    @property
    def feasible_rate(self) -> float:
        return sum(o.result.feasible for o in self.outcomes) / len(self.outcomes)


def solve_with_restarts(
    solver_id: str,
    sub: SubNetwork,
    w: QoTWeights,
    c: QoTConstraints,
    config: Optional[SolverConfig] = None,
    seeds: Sequence[int] = (0,),
) -> RestartSummary:
    """
    Independent runs, one per seed. Reports the best outcome and the mean of
    the per-run best utilities over runs that found a feasible path.
    """
    if not seeds:
        raise ValueError("at least one seed is required")
    outcomes = [run_solver(solver_id, sub, w, c, config, seed) for seed in seeds]
    best = outcomes[0]
    for outcome in outcomes[1:]:
        u = outcome.result.utility
        if u is not None and (best.result.utility is None or u > best.result.utility):
            best = outcome
    utilities = [o.result.utility for o in outcomes if o.result.utility is not None]
    mean = sum(utilities) / len(utilities) if utilities else None
    return RestartSummary(outcomes=outcomes, best=best, mean_best_utility=mean)


__all__ = [
    "SOLVERS",
    "RestartSummary",
    "SearchStats",
    "backward_search",
    "child_seed",
    "enumerate_paths",
    "forward_search",
    "h_mcop",
    "mfpb_hostp",
    "optimal_path",
    "qa_solve",
    "run_solver",
    "sa_solve",
    "solve_with_restarts",
]
