"""
Trust graph model (deterministic operations)
"""

from .generator import generate_graph, graph_from_edge_list
from .loader import dump_graph, load_graph, read_graph, write_graph
from .social_graph import (
    GraphError,
    GraphFormatError,
    MissingEdgeError,
    SocialGraph,
    UnknownNodeError,
    node_sort_key,
    path_sort_key,
)
from .subnetwork import (
    InvalidPathError,
    PathLimitExceeded,
    SubNetwork,
    TrustPath,
    default_path_limit,
    extract_subnetwork,
    iter_simple_paths,
    neighbors_pruned,
)

__all__ = [
    'SocialGraph',
    'SubNetwork',
    'TrustPath',
    'GraphError',
    'GraphFormatError',
    'UnknownNodeError',
    'MissingEdgeError',
    'InvalidPathError',
    'PathLimitExceeded',
    'load_graph',
    'read_graph',
    'dump_graph',
    'write_graph',
    'generate_graph',
    'graph_from_edge_list',
    'extract_subnetwork',
    'iter_simple_paths',
    'neighbors_pruned',
    'default_path_limit',
    'node_sort_key',
    'path_sort_key',
]
