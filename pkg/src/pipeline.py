"""
Benchmark orchestrator: builds seeded instances, runs every solver on them and
collects one result row per run
"""

import logging
import os
import time
from collections import Counter
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from joblib import Parallel, delayed
from pydantic import BaseModel, ConfigDict

from .graph import PathLimitExceeded, SocialGraph, SubNetwork, extract_subnetwork, generate_graph
from .models import (
    SOLVER_IDS,
    BenchSuite,
    GeneratorSpec,
    PathStatus,
    QoTConstraints,
    QoTWeights,
    ResultRow,
    SolverConfig,
)
from .solvers import child_seed, run_solver

logger = logging.getLogger(__name__)

# First spawn-key component of each seed stream derived from master_seed
GRAPH_STREAM = 0
PAIR_STREAM = 1
SOLVER_STREAM = 2

PAIR_ATTEMPTS_PER_PAIR = 50


class BenchInstance(BaseModel):
    """A source/target pair on one generated scale, with its extracted subnetwork"""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    scale_id: int
    nodes: int
    edges: int
    pair_id: int
    source: str
    target: str
    sub: SubNetwork
    extraction_time: float


class WorkItem(BaseModel):
    instance: BenchInstance
    weight_id: int
    weights: QoTWeights
    solver_id: str
    restart_id: int
    seed: int


def _extract(graph: SocialGraph, source: str, target: str, max_hops: int, limit: Optional[int]):
    started = time.perf_counter()
    sub = extract_subnetwork(graph, source, target, max_hops, limit)
    return sub, time.perf_counter() - started


def select_pairs(
    graph: SocialGraph,
    count: int,
    max_hops: int,
    rng: np.random.Generator,
    limit: Optional[int] = None,
) -> List[Tuple[str, str, SubNetwork, float]]:
    """
    Draw ``count`` distinct source/target pairs, preferring pairs joined by
    at least one path within the hop budget. When the draw budget runs out
    the remaining slots are filled with pairs whose subnetwork is empty.
    """
    nodes = graph.nodes
    chosen: List[Tuple[str, str, SubNetwork, float]] = []
    fallback: List[Tuple[str, str, SubNetwork, float]] = []
    seen = set()
    for _ in range(PAIR_ATTEMPTS_PER_PAIR * count):
        if len(chosen) == count:
            break
        i, j = rng.choice(len(nodes), size=2, replace=False)
        source, target = nodes[int(i)], nodes[int(j)]
        if (source, target) in seen:
            continue
        seen.add((source, target))
        try:
            sub, elapsed = _extract(graph, source, target, max_hops, limit)
        except PathLimitExceeded:
            logger.debug("Skipping pair %s->%s: too many paths", source, target)
            continue
        (fallback if sub.is_empty else chosen).append((source, target, sub, elapsed))
    if len(chosen) < count:
        logger.warning(
            "⚠️ Only %d of %d pairs are connected within %d hops", len(chosen), count, max_hops
        )
        chosen.extend(fallback[: count - len(chosen)])
    return chosen


class BenchmarkPipeline:
    """Main orchestrator for benchmark suites"""

    def __init__(self, n_jobs: Optional[int] = None):
        """
        Args:
            n_jobs: joblib worker count (uses the BENCH_N_JOBS env var if None)
        """
        self.n_jobs = n_jobs if n_jobs is not None else int(os.getenv("BENCH_N_JOBS", "1"))

    def build_instances(self, suite: BenchSuite) -> List[BenchInstance]:
        instances: List[BenchInstance] = []
        for scale_id, (nodes, edges) in enumerate(suite.scales, start=1):
            spec = GeneratorSpec(
                node_count=nodes,
                edge_count=edges,
                qot_distribution=suite.qot_distribution,
                seed=child_seed(suite.master_seed, GRAPH_STREAM, scale_id),
            )
            graph = generate_graph(spec)
            rng = np.random.default_rng(child_seed(suite.master_seed, PAIR_STREAM, scale_id))
            pairs = select_pairs(
                graph, suite.pairs_per_scale, suite.max_hops, rng, suite.solver_config.path_limit
            )
            for pair_id, (source, target, sub, elapsed) in enumerate(pairs, start=1):
                instances.append(
                    BenchInstance(
                        scale_id=scale_id,
                        nodes=nodes,
                        edges=edges,
                        pair_id=pair_id,
                        source=source,
                        target=target,
                        sub=sub,
                        extraction_time=elapsed,
                    )
                )
            logger.info("📊 Scale %d: %d nodes, %d edges, %d pairs", scale_id, nodes, edges, len(pairs))
        return instances

    def work_items(self, suite: BenchSuite, instances: List[BenchInstance]) -> List[WorkItem]:
        items = []
        for instance in instances:
            for weight_id, weights in enumerate(suite.weight_groups, start=1):
                for solver_id in suite.solvers:
                    for restart_id in range(1, suite.restarts + 1):
                        seed = child_seed(
                            suite.master_seed,
                            SOLVER_STREAM,
                            instance.scale_id,
                            weight_id,
                            instance.pair_id,
                            SOLVER_IDS.index(solver_id),
                            restart_id,
                        )
                        items.append(
                            WorkItem(
                                instance=instance,
                                weight_id=weight_id,
                                weights=weights,
                                solver_id=solver_id,
                                restart_id=restart_id,
                                seed=seed,
                            )
                        )
        return items

    def run_benchmark(self, suite: BenchSuite) -> List[ResultRow]:
        """
        Run every scale × weight group × pair × solver × restart of the suite

        Rows come back sorted by their key, whatever the execution order; a
        failing run yields a row with status ``error`` instead of aborting.
        """
        logger.info("🚀 Running benchmark with master seed %d", suite.master_seed)
        started = time.perf_counter()
        instances = self.build_instances(suite)
        items = self.work_items(suite, instances)
        logger.info("🔗 %d runs over %d instances (n_jobs=%d)", len(items), len(instances), self.n_jobs)

        rows = Parallel(n_jobs=self.n_jobs)(
            delayed(run_item)(item, suite.constraints, suite.solver_config) for item in items
        )
        rows = sorted(rows, key=ResultRow.key)
        logger.info("✅ Benchmark finished in %.2f seconds", time.perf_counter() - started)
        return rows

    def run_from_suite(self, suite_path: Any) -> List[ResultRow]:
        """Load a YAML/JSON suite file and run it"""
        return self.run_benchmark(BenchSuite.load(suite_path))

    def get_statistics(self, rows: List[ResultRow]) -> Dict[str, Any]:
        statuses = Counter(r.status.value for r in rows)
        return {
            "total_rows": len(rows),
            "feasible_rows": sum(r.feasible for r in rows),
            "error_rows": statuses.get(PathStatus.ERROR.value, 0),
            "statuses": dict(sorted(statuses.items())),
        }


def run_item(item: WorkItem, constraints: QoTConstraints, config: SolverConfig) -> ResultRow:
    inst = item.instance
    base: Dict[str, Any] = dict(
        scale_id=inst.scale_id,
        nodes=inst.nodes,
        edges=inst.edges,
        weight_id=item.weight_id,
        pair_id=inst.pair_id,
        source=inst.source,
        target=inst.target,
        solver_id=item.solver_id,
        restart_id=item.restart_id,
        seed=item.seed,
    )
    try:
        outcome = run_solver(item.solver_id, inst.sub, item.weights, constraints, config, item.seed)
    except Exception as e:
        logger.error("❌ %s failed on scale %d pair %d: %s", item.solver_id, inst.scale_id, inst.pair_id, e)
        return ResultRow(**base, status=PathStatus.ERROR, feasible=False, error=str(e))

    wall_time = outcome.wall_time
    if item.solver_id == "mfpb":
        # exhaustive subnetwork search counts toward the heuristic's time
        wall_time += inst.extraction_time
    result = outcome.result
    return ResultRow(
        **base,
        status=result.status,
        feasible=result.feasible,
        utility=result.utility,
        path=result.path,
        wall_time=wall_time,
        steps=outcome.steps_executed,
    )
