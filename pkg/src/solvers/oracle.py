"""
Exhaustive enumeration of hop-bounded simple paths and the exact optimum
"""

import logging
from typing import Iterator, Optional

from ..graph import SubNetwork, TrustPath, default_path_limit, iter_simple_paths, path_sort_key
from ..models import OptResult, QoTConstraints, QoTWeights
from ..qot import aggregate, is_feasible, utility

logger = logging.getLogger(__name__)


def enumerate_paths(sub: SubNetwork, limit: Optional[int] = None) -> Iterator[TrustPath]:
    """
    Every simple source→target path within the hop budget, in lexicographic order

    Raises:
        PathLimitExceeded: more than ``limit`` paths (default from ORACLE_PATH_LIMIT)
    """
    if sub.is_empty:
        return iter(())
    return iter_simple_paths(
        sub.graph,
        sub.source,
        sub.target,
        sub.max_hops,
        distance_to_target=sub.distance_to_target,
        limit=limit if limit is not None else default_path_limit(),
    )


def optimal_path(
    sub: SubNetwork,
    w: QoTWeights,
    c: QoTConstraints,
    limit: Optional[int] = None,
) -> OptResult:
    """Maximum-utility feasible path; ties go to fewer hops, then the lexicographic node sequence"""
    best = None
    best_key = None
    seen = 0
    for path in enumerate_paths(sub, limit):
        seen += 1
        q = aggregate(path, sub)
        if not is_feasible(q, c):
            continue
        u = utility(q, w)
        key = (-u, len(path), path_sort_key(path))
        if best_key is None or key < best_key:
            best, best_key = (path, u), key

    if seen == 0:
        return OptResult.no_path()
    if best is None:
        logger.debug("None of %d paths meets the constraints", seen)
        return OptResult.infeasible()
    logger.debug("Oracle scanned %d paths, best utility %.6f", seen, best[1])
    return OptResult.found(best[0], best[1])
