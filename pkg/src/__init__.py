"""
OSTP annealer - optimal social trust path selection under QoT constraints
"""

# Graph model
from .graph import SocialGraph, SubNetwork, extract_subnetwork, generate_graph, load_graph

# Core models
from .models import (
    BenchSuite,
    OptResult,
    PathStatus,
    QaParams,
    QoTConstraints,
    QoTVector,
    QoTWeights,
    ResultRow,
    SaParams,
    SolveOutcome,
    SolverConfig,
)
from .pipeline import BenchmarkPipeline

# Solvers
from .solvers import run_solver, solve_with_restarts

__all__ = [
    # Models
    'QoTVector',
    'QoTWeights',
    'QoTConstraints',
    'OptResult',
    'PathStatus',
    'SolveOutcome',
    'SaParams',
    'QaParams',
    'SolverConfig',
    'BenchSuite',
    'ResultRow',

    # Graph
    'SocialGraph',
    'SubNetwork',
    'load_graph',
    'generate_graph',
    'extract_subnetwork',

    # Core classes
    'BenchmarkPipeline',
    'run_solver',
    'solve_with_restarts',
]

__version__ = "0.1.0"
