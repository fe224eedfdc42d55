"""
Command Line Interface for the OSTP annealer
Subcommands: generate, import-edgelist, solve, bench, summarize
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from dotenv import load_dotenv

# Get the project root directory (parent of src)
project_root = Path(__file__).parent.parent
env_path = project_root / ".env"

# Load environment variables
load_dotenv(env_path)

from .graph import dump_graph, extract_subnetwork, generate_graph, graph_from_edge_list, read_graph
from .models import (
    DEFAULT_CONSTRAINTS,
    DEFAULT_WEIGHTS,
    SOLVER_IDS,
    GeneratorSpec,
    QaParams,
    QoTConstraints,
    QoTWeights,
    SaParams,
    SolverConfig,
)
from .pipeline import BenchmarkPipeline
from .reporting import emit, format_for, read_rows, save, summarize
from .solvers import child_seed, solve_with_restarts

logger = logging.getLogger(__name__)


def setup_logging(verbose: bool = False):
    """Setup logging configuration"""
    level = logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(
        level=level,
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        handlers=[logging.StreamHandler(sys.stdout)],
    )

    # Set our package to appropriate level
    logging.getLogger("src").setLevel(level)


def _write_or_print(document: str, out: Optional[Path]) -> None:
    if out:
        save(document, out)
    else:
        print(document, end="")


def cmd_generate(args: argparse.Namespace) -> None:
    spec = GeneratorSpec(node_count=args.nodes, edge_count=args.edges, seed=args.seed)
    graph = generate_graph(spec)
    logger.info(
        "✅ Generated %d participants, %d trust pairs", graph.number_of_nodes(), graph.number_of_edges()
    )
    _write_or_print(dump_graph(graph), args.out)


def cmd_import_edgelist(args: argparse.Namespace) -> None:
    if not args.input.exists():
        raise FileNotFoundError(f"Edge list not found: {args.input}")
    graph = graph_from_edge_list(args.input.read_text(encoding="utf-8"), seed=args.seed)
    logger.info(
        "✅ Imported %d participants, %d trust pairs", graph.number_of_nodes(), graph.number_of_edges()
    )
    _write_or_print(dump_graph(graph), args.out)


def solver_config_from_args(args: argparse.Namespace) -> SolverConfig:
    qa_updates = {
        "P": args.P,
        "T": args.T,
        "T0": args.T0,
        "gamma0": args.gamma0,
        "xi": args.xi,
        "max_steps": args.max_steps,
        "M": args.M,
        "moves_multiplier": args.moves_multiplier,
        "penalty_beta": args.beta,
        "temperature_schedule": args.temp_schedule,
        "move_budget": args.move_budget,
        "warmup_sweeps": args.warmup_sweeps,
        "record_trace": args.trace,
    }
    sa_updates = {
        "t0": args.t0,
        "cooling": args.cooling,
        "max_steps": args.max_steps,
        "moves_per_step": args.moves_per_step,
        "M": args.M,
        "penalty_beta": args.beta,
        "record_trace": args.trace,
    }
    return SolverConfig(
        qa=QaParams(**{k: v for k, v in qa_updates.items() if v is not None}),
        sa=SaParams(**{k: v for k, v in sa_updates.items() if v is not None}),
        hmcop_lambda=args.hmcop_lambda,
    )


def cmd_solve(args: argparse.Namespace) -> None:
    if not args.graph.exists():
        raise FileNotFoundError(f"Graph file not found: {args.graph}")
    graph = read_graph(args.graph)
    weights = QoTWeights.parse(args.weights) if args.weights else DEFAULT_WEIGHTS
    constraints = QoTConstraints.parse(args.constraints) if args.constraints else DEFAULT_CONSTRAINTS
    config = solver_config_from_args(args)

    sub = extract_subnetwork(graph, args.source, args.target, args.max_hops, config.path_limit)
    logger.info(
        "🔗 Subnetwork %s->%s: %d participants, %d trust pairs",
        args.source,
        args.target,
        sub.number_of_nodes(),
        sub.graph.number_of_edges(),
    )
    seeds = [args.seed] if args.restarts == 1 else [child_seed(args.seed, r) for r in range(args.restarts)]
    summary = solve_with_restarts(args.solver, sub, weights, constraints, config, seeds)
    best = summary.best

    logger.info("📊 %s finished: %s", args.solver, best.result.status.value)
    if args.restarts > 1:
        logger.info("   - Feasible runs: %.0f%%", 100 * summary.feasible_rate)
        logger.info("   - Mean best utility: %s", summary.mean_best_utility)
    payload = best.model_dump(mode="json", exclude={"trace"} if not args.trace else None)
    payload["mean_best_utility"] = summary.mean_best_utility
    payload["restarts"] = args.restarts
    _write_or_print(json.dumps(payload, indent=2) + "\n", args.out)


def cmd_bench(args: argparse.Namespace) -> None:
    pipeline = BenchmarkPipeline(n_jobs=args.n_jobs)
    rows = pipeline.run_from_suite(args.suite)
    save(emit(rows, format_for(args.out)), args.out)
    stats = pipeline.get_statistics(rows)
    logger.info("📊 Benchmark complete!")
    logger.info("   - Rows: %d", stats["total_rows"])
    logger.info("   - Feasible rows: %d", stats["feasible_rows"])
    logger.info("   - Failed rows: %d", stats["error_rows"])
    if args.summary_out:
        save(emit(summarize(rows), format_for(args.summary_out)), args.summary_out)


def cmd_summarize(args: argparse.Namespace) -> None:
    rows = read_rows(args.input)
    records = summarize(rows)
    logger.info("📊 %d rows summarized into %d records", len(rows), len(records))
    _write_or_print(emit(records, format_for(args.out) if args.out else "csv"), args.out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="OSTP annealer - optimal social trust path selection by quantum annealing",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Generate a seeded graph
  python -m src generate --nodes 50 --edges 63 --seed 7 --out graph.txt

  # Solve one pair with the quantum annealer
  python -m src solve --graph graph.txt --source 0 --target 17 --solver qa --max-steps 200

  # Compare against the exact optimum
  python -m src solve --graph graph.txt --source 0 --target 17 --solver oracle

  # Run a benchmark suite and summarize it
  python -m src bench --suite configs/smoke_suite.yaml --out results.csv
  python -m src summarize --in results.csv --out summary.csv
        """,
    )
    parser.add_argument("--verbose", "-v", action="store_true", help="Enable verbose logging")
    commands = parser.add_subparsers(dest="command", required=True)

    generate = commands.add_parser("generate", help="Generate a seeded random trust graph")
    generate.add_argument("--nodes", type=int, required=True, help="Number of participants")
    generate.add_argument("--edges", type=int, required=True, help="Number of symmetric trust pairs")
    generate.add_argument("--seed", type=int, default=0, help="Random seed (default: 0)")
    generate.add_argument("--out", type=Path, help="Graph file to write (default: stdout)")
    generate.set_defaults(handler=cmd_generate)

    importer = commands.add_parser("import-edgelist", help="Attach random QoT values to a bare edge list")
    importer.add_argument(
        "--in", dest="input", type=Path, required=True, help="Edge list file (u v per line)"
    )
    importer.add_argument("--seed", type=int, default=0, help="Random seed for QoT values (default: 0)")
    importer.add_argument("--out", type=Path, help="Graph file to write (default: stdout)")
    importer.set_defaults(handler=cmd_import_edgelist)

    solve = commands.add_parser("solve", help="Select a trust path between two participants")
    solve.add_argument("--graph", type=Path, required=True, help="Graph file")
    solve.add_argument("--source", required=True, help="Source participant id")
    solve.add_argument("--target", required=True, help="Target participant id")
    solve.add_argument("--solver", choices=SOLVER_IDS, default="qa", help="Solver (default: qa)")
    solve.add_argument("--weights", help="Utility weights wT,wr,wrho (default: 0.3,0.3,0.4)")
    solve.add_argument("--constraints", help="QoT constraints cT,cr,crho (default: 0.05,0.001,0.3)")
    solve.add_argument("--max-hops", type=int, default=6, help="Hop budget (default: 6)")
    solve.add_argument("--seed", type=int, default=0, help="Random seed (default: 0)")
    solve.add_argument("--restarts", type=int, default=1, help="Independent searches (default: 1)")
    solve.add_argument("--P", type=int, help="Replica count")
    solve.add_argument("--T", type=float, help="Simulation temperature")
    solve.add_argument("--T0", type=float, help="Initial temperature of the linear schedule")
    solve.add_argument("--gamma0", type=float, help="Initial transverse field")
    solve.add_argument("--xi", type=float, help="Transverse field schedule shape")
    solve.add_argument("--max-steps", type=int, help="Monte Carlo steps")
    solve.add_argument("--M", type=int, help="Neighborhood prune size")
    solve.add_argument("--moves-multiplier", type=int, help="QA moves per step per subnetwork node")
    solve.add_argument("--move-budget", choices=("total", "per_replica"), help="How QA moves scale with P")
    solve.add_argument("--warmup-sweeps", type=int, help="QA warm-up sweeps at P*T")
    solve.add_argument("--beta", type=float, help="Constraint penalty weight")
    solve.add_argument("--temp-schedule", choices=("fixed", "linear"), help="QA temperature schedule")
    solve.add_argument("--t0", type=float, help="SA initial temperature")
    solve.add_argument("--cooling", type=float, help="SA cooling factor")
    solve.add_argument("--moves-per-step", type=int, help="SA proposals per step")
    solve.add_argument(
        "--lambda", dest="hmcop_lambda", type=float, default=1.0, help="H_MCOP lambda (default: 1)"
    )
    solve.add_argument("--trace", action="store_true", help="Include the per-step trace in the output")
    solve.add_argument("--out", type=Path, help="JSON result file (default: stdout)")
    solve.set_defaults(handler=cmd_solve)

    bench = commands.add_parser("bench", help="Run a benchmark suite")
    bench.add_argument("--suite", type=Path, required=True, help="Suite file (YAML or JSON)")
    bench.add_argument("--out", type=Path, required=True, help="Result rows (.csv or .jsonl)")
    bench.add_argument("--summary-out", type=Path, help="Also write the summary table here")
    bench.add_argument("--n-jobs", type=int, help="Parallel workers (default: BENCH_N_JOBS or 1)")
    bench.set_defaults(handler=cmd_bench)

    summary = commands.add_parser("summarize", help="Summarize benchmark rows")
    summary.add_argument("--in", dest="input", type=Path, required=True, help="Result rows (.csv or .jsonl)")
    summary.add_argument("--out", type=Path, help="Summary file (default: stdout)")
    summary.set_defaults(handler=cmd_summarize)

    return parser


def main(argv: Optional[List[str]] = None):
    """Main CLI entry point"""
    parser = build_parser()
    args = parser.parse_args(argv)

    # Setup logging
    setup_logging(args.verbose)

    try:
        args.handler(args)
    except KeyboardInterrupt:
        logger.info("🛑 Interrupted by user")
        sys.exit(1)
    except Exception as e:
        logger.error("❌ %s failed: %s", args.command, str(e))
        if args.verbose:
            logger.exception("Full traceback:")
        sys.exit(1)


if __name__ == "__main__":
    main()
