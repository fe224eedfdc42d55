"""
Tests for the benchmark pipeline: instance building, seeding, row fan-out and failures
"""

from pathlib import Path

import numpy as np
import pytest
from pydantic import ValidationError

from src.models import (
    DEFAULT_WEIGHT_GROUPS,
    DEFAULT_WEIGHTS,
    BenchSuite,
    OptResult,
    PathStatus,
    QaParams,
    QoTWeights,
    SaParams,
    SolveOutcome,
    SolverConfig,
    interpolate_scales,
)
from src.pipeline import SOLVER_STREAM, BenchInstance, BenchmarkPipeline, WorkItem, run_item, select_pairs
from src.solvers import child_seed, run_solver
from tests.conftest import make_graph

CONFIGS = Path(__file__).parent.parent / "configs"


def tiny_suite(**overrides) -> BenchSuite:
    values = dict(
        scales=[(12, 20)],
        weight_groups=[DEFAULT_WEIGHTS],
        pairs_per_scale=1,
        solvers=["qa", "mfpb"],
        restarts=1,
        master_seed=7,
        solver_config=SolverConfig(
            qa=QaParams(P=4, max_steps=10, moves_multiplier=2, warmup_sweeps=2),
            sa=SaParams(max_steps=10, moves_per_step=5),
        ),
    )
    values.update(overrides)
    return BenchSuite(**values)


def strip_times(rows):
    return [r.model_dump(exclude={"wall_time"}) for r in rows]


@pytest.fixture
def pipeline():
    return BenchmarkPipeline(n_jobs=1)


class TestBenchSuite:
    def test_default_scales(self):
        scales = interpolate_scales()
        assert len(scales) == 25
        assert scales[0] == (50, 63)
        assert scales[-1] == (400, 2356)
        assert scales[12] == (225, 1210)

    def test_unknown_solver(self):
        with pytest.raises(ValidationError):
            tiny_suite(solvers=["qa", "dijkstra"])

    def test_infeasible_scale(self):
        with pytest.raises(ValidationError):
            tiny_suite(scales=[(4, 7)])

    def test_load_yaml(self, tmp_path):
        path = tmp_path / "suite.yaml"
        path.write_text(
            "master_seed: 3\nscales: [[20, 30]]\nsolvers: [sa]\nsolver_config:\n  sa: {max_steps: 5}\n"
        )
        suite = BenchSuite.load(path)
        assert suite.master_seed == 3
        assert suite.scales == [(20, 30)]
        assert suite.solver_config.sa.max_steps == 5
        assert len(suite.weight_groups) == 4

    def test_load_json(self, tmp_path):
        path = tmp_path / "suite.json"
        path.write_text('{"pairs_per_scale": 2, "restarts": 3}')
        suite = BenchSuite.load(path)
        assert (suite.pairs_per_scale, suite.restarts) == (2, 3)

    def test_load_missing(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            BenchSuite.load(tmp_path / "absent.yaml")

    @pytest.mark.parametrize("name", ["smoke_suite.yaml", "desk_suite.yaml"])
    def test_shipped_suites_parse(self, name):
        suite = BenchSuite.load(CONFIGS / name)
        assert suite.scales

    def test_desk_suite_weight_ids_follow_defaults(self):
        suite = BenchSuite.load(CONFIGS / "desk_suite.yaml")
        assert suite.weight_groups == list(DEFAULT_WEIGHT_GROUPS)

    def test_smoke_suite_weights_keep_default_order(self):
        suite = BenchSuite.load(CONFIGS / "smoke_suite.yaml")
        positions = [DEFAULT_WEIGHT_GROUPS.index(w) for w in suite.weight_groups]
        assert positions == sorted(positions)


class TestSelectPairs:
    def test_prefers_connected_pairs(self):
        graph = make_graph({"0": 0.5, "1": 0.5, "2": 0.5}, [("0", "1", 0.9, 0.9)])
        pairs = select_pairs(graph, 3, 1, np.random.default_rng(0))
        assert len(pairs) == 3
        assert all(not sub.is_empty for _, _, sub, _ in pairs[:2])
        assert pairs[2][2].is_empty
        assert {(s, t) for s, t, _, _ in pairs[:2]} == {("0", "1"), ("1", "0")}


class TestBenchmarkPipeline:
    """End-to-end suite runs at a tiny scale"""

    def test_cardinality(self, pipeline):
        rows = pipeline.run_benchmark(tiny_suite())
        assert len(rows) == 2
        assert [r.solver_id for r in rows] == ["mfpb", "qa"]
        assert all(r.status != PathStatus.ERROR for r in rows)

    def test_cardinality_multiplies(self, pipeline):
        suite = tiny_suite(
            weight_groups=[DEFAULT_WEIGHTS, QoTWeights(w_T=0.5, w_r=0.25, w_rho=0.25)],
            restarts=2,
            pairs_per_scale=2,
        )
        rows = pipeline.run_benchmark(suite)
        assert len(rows) == 1 * 2 * 2 * 2 * 2
        assert rows == sorted(rows, key=lambda r: r.key())

    def test_same_master_seed_same_rows(self, pipeline):
        first = pipeline.run_benchmark(tiny_suite(solvers=["qa", "sa", "mfpb", "hmcop", "oracle"]))
        second = pipeline.run_benchmark(tiny_suite(solvers=["qa", "sa", "mfpb", "hmcop", "oracle"]))
        assert strip_times(first) == strip_times(second)

    def test_seeds_follow_work_item_key(self, pipeline):
        suite = tiny_suite()
        items = pipeline.work_items(suite, pipeline.build_instances(suite))
        qa = next(i for i in items if i.solver_id == "qa")
        assert qa.seed == child_seed(7, SOLVER_STREAM, 1, 1, 1, 0, 1)
        assert len({i.seed for i in items}) == len(items)

    def test_instances_ids_are_one_based(self, pipeline):
        instances = pipeline.build_instances(tiny_suite(pairs_per_scale=2))
        assert [(i.scale_id, i.pair_id) for i in instances] == [(1, 1), (1, 2)]
        assert all(i.nodes == 12 and i.edges == 20 for i in instances)

    def test_failing_solver_yields_error_row(self, pipeline, mocker):
        def flaky(solver_id, *args, **kwargs):
            if solver_id == "qa":
                raise RuntimeError("replica blew up")
            return run_solver(solver_id, *args, **kwargs)

        mocker.patch("src.pipeline.run_solver", side_effect=flaky)
        rows = pipeline.run_benchmark(tiny_suite())
        errors = [r for r in rows if r.status == PathStatus.ERROR]
        assert len(rows) == 2
        assert [r.solver_id for r in errors] == ["qa"]
        assert errors[0].error == "replica blew up"
        assert errors[0].utility is None and not errors[0].feasible

    def test_statistics(self, pipeline):
        rows = pipeline.run_benchmark(tiny_suite())
        stats = pipeline.get_statistics(rows)
        assert stats["total_rows"] == 2
        assert stats["error_rows"] == 0
        assert sum(stats["statuses"].values()) == 2

    def test_n_jobs_from_environment(self, monkeypatch):
        monkeypatch.setenv("BENCH_N_JOBS", "3")
        assert BenchmarkPipeline().n_jobs == 3
        assert BenchmarkPipeline(n_jobs=2).n_jobs == 2

    def test_run_from_suite(self, pipeline, tmp_path):
        path = tmp_path / "suite.json"
        path.write_text(tiny_suite().model_dump_json())
        assert len(pipeline.run_from_suite(path)) == 2

    @pytest.mark.slow
    def test_annealer_dominates_mfpb(self, pipeline):
        suite = tiny_suite(
            scales=[(20, 30), (30, 60), (40, 90)],
            weight_groups=list(DEFAULT_WEIGHT_GROUPS),
            pairs_per_scale=3,
            restarts=5,
            solver_config=SolverConfig(qa=QaParams(P=8, max_steps=200, moves_multiplier=5, warmup_sweeps=10)),
        )
        rows = pipeline.run_benchmark(suite)
        assert all(r.status != PathStatus.ERROR for r in rows)
        qa_best = {}
        mfpb = {}
        for r in rows:
            key = (r.scale_id, r.weight_id, r.pair_id)
            if r.solver_id == "mfpb":
                mfpb[key] = r
            elif r.feasible and (key not in qa_best or r.utility > qa_best[key].utility):
                qa_best[key] = r
        for key, baseline in mfpb.items():
            if baseline.feasible and key in qa_best:
                assert qa_best[key].utility >= baseline.utility - 1e-9, key
        for scale_id in range(1, len(suite.scales) + 1):
            keys = [k for k in mfpb if k[0] == scale_id]
            qa_rate = sum(k in qa_best for k in keys) / len(keys)
            mfpb_rate = sum(mfpb[k].feasible for k in keys) / len(keys)
            assert qa_rate >= mfpb_rate, scale_id


class TestRunItem:
    """Single work items, with the solver mocked where timing matters"""

    @pytest.fixture
    def instance(self, diamond_sub):
        return BenchInstance(
            scale_id=1,
            nodes=4,
            edges=4,
            pair_id=1,
            source="1",
            target="4",
            sub=diamond_sub,
            extraction_time=0.25,
        )

    def _item(self, instance, solver_id):
        return WorkItem(
            instance=instance,
            weight_id=1,
            weights=DEFAULT_WEIGHTS,
            solver_id=solver_id,
            restart_id=1,
            seed=99,
        )

    def test_mfpb_includes_extraction_time(self, instance, constraints, mocker):
        result = OptResult.found(["1", "2", "4"], 0.613)
        outcome = SolveOutcome(result=result, solver_id="mfpb", wall_time=0.5)
        mocker.patch("src.pipeline.run_solver", return_value=outcome)
        row = run_item(self._item(instance, "mfpb"), constraints, SolverConfig())
        assert row.wall_time == pytest.approx(0.75)
        assert row.path == ["1", "2", "4"]

    def test_annealer_time_is_solver_only(self, instance, constraints, mocker):
        outcome = SolveOutcome(result=OptResult.infeasible(), solver_id="qa", wall_time=0.5)
        mocker.patch("src.pipeline.run_solver", return_value=outcome)
        row = run_item(self._item(instance, "qa"), constraints, SolverConfig())
        assert row.wall_time == 0.5
        assert row.status == PathStatus.INFEASIBLE_INSTANCE
        assert row.utility is None

    def test_real_oracle_row(self, instance, constraints):
        row = run_item(self._item(instance, "oracle"), constraints, SolverConfig())
        assert row.status == PathStatus.OPTIMAL_FOUND
        assert row.utility == pytest.approx(0.613)
        assert row.seed == 99

