"""
Quality-of-trust aggregation, utility, the delta objective and g_lambda
"""

import math
from typing import Sequence, Tuple, Union

from .graph import SocialGraph, SubNetwork
from .models import QoTConstraints, QoTVector, QoTWeights

GraphLike = Union[SocialGraph, SubNetwork]


def _graph_of(graph: GraphLike) -> SocialGraph:
    return graph.graph if isinstance(graph, SubNetwork) else graph


def aggregate(path: Sequence[str], graph: GraphLike) -> QoTVector:
    """
    Aggregate QoT along a path

    Trust and intimacy multiply along the edges; role impact is the mean rho
    of the intermediate participants, 1 for a direct edge.

    Raises:
        MissingEdgeError: a consecutive pair is not an edge
    """
    g = _graph_of(graph)
    if len(path) < 2:
        raise ValueError("a path needs at least two nodes")
    trust = 1.0
    intimacy = 1.0
    for u, v in zip(path, path[1:]):
        t, r = g.edge_values(u, v)
        trust *= t
        intimacy *= r
    middle = path[1:-1]
    rho = sum(g.rho(n) for n in middle) / len(middle) if middle else 1.0
    return QoTVector(T_p=trust, r_p=intimacy, rho_p=rho)


def utility(q: QoTVector, w: QoTWeights) -> float:
    """F = w_T*T_p + w_r*r_p + w_rho*rho_p"""
    return w.w_T * q.T_p + w.w_r * q.r_p + w.w_rho * q.rho_p


# Smallest ratio reported for a value below its bound
_JUST_ABOVE_ONE = math.nextafter(1.0, 2.0)


def _deficiency(value: float, bound: float) -> float:
    # 1 - value can round onto 1 - bound when value sits an ulp below the bound
    ratio = (1.0 - value) / (1.0 - bound)
    return max(ratio, _JUST_ABOVE_ONE) if value < bound else ratio


def _deficiencies(q: QoTVector, c: QoTConstraints) -> Tuple[float, float, float]:
    return (
        _deficiency(q.T_p, c.c_T),
        _deficiency(q.r_p, c.c_r),
        _deficiency(q.rho_p, c.c_rho),
    )


def delta(q: QoTVector, c: QoTConstraints) -> float:
    """Largest normalized deficiency; a path is feasible iff this is <= 1"""
    return max(_deficiencies(q, c))


def g_lambda(q: QoTVector, c: QoTConstraints, lam: float = 1.0) -> float:
    """Power sum of the normalized deficiencies (at most 3 for feasible paths when lam=1)"""
    if lam < 1:
        raise ValueError("lambda must be at least 1")
    return sum(d**lam for d in _deficiencies(q, c))


def is_feasible(q: QoTVector, c: QoTConstraints) -> bool:
    return q.T_p >= c.c_T and q.r_p >= c.c_r and q.rho_p >= c.c_rho


def constraint_penalty(q: QoTVector, c: QoTConstraints) -> float:
    """Sum of relative shortfalls below each bound; zero iff feasible"""
    total = 0.0
    for value, bound in zip(q.as_tuple(), c.as_tuple()):
        if value < bound:
            total += (bound - value) / (1.0 if bound == 0 else bound)
    return total


def path_utility(path: Sequence[str], graph: GraphLike, w: QoTWeights) -> float:
    return utility(aggregate(path, graph), w)
