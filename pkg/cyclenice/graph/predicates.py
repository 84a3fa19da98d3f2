"""
Structural predicates: claw-freeness, planarity and base-graph identification.

All predicates read the underlying simple graph; parallel edges never change
the answer.
"""
import logging
from itertools import combinations
from typing import Optional, Tuple

import networkx as nx

from cyclenice.graph import families
from cyclenice.graph.multigraph import Multigraph
from cyclenice.schemas import BaseKind, BaseTag

logger = logging.getLogger(__name__)

Claw = Tuple[int, Tuple[int, int, int]]

# Fixed-size bases checked by isomorphism, in identification order.
_FIXED_BASES = (
    (BaseKind.DIAMOND, families.diamond),
    (BaseKind.K4, families.k4),
    (BaseKind.C6BAR, families.c6bar),
    (BaseKind.W5, families.w5),
)


def find_claw(g: Multigraph) -> Optional[Claw]:
    """
    Find an induced K1,3 in the simple support.

    Returns:
        (centre, three pairwise nonadjacent neighbours) for the first centre in
        vertex order, or None if the graph is claw-free
    """
    support = g.to_networkx()
    for v in g.vertices:
        for a, b, c in combinations(sorted(support[v]), 3):
            if not (support.has_edge(a, b) or support.has_edge(a, c) or support.has_edge(b, c)):
                return v, (a, b, c)
    return None


def is_claw_free(g: Multigraph) -> bool:
    return find_claw(g) is None


def is_planar(g: Multigraph) -> bool:
    planar, _ = nx.check_planarity(g.to_networkx())
    return planar


def _is_even_cycle_support(support: nx.Graph) -> bool:
    n = support.number_of_nodes()
    if n < 4 or n % 2:
        return False
    return all(d == 2 for _, d in support.degree) and nx.is_connected(support)


def identify_base(g: Multigraph) -> BaseTag:
    """
    Name the simple support of g if it is one of the fixed base graphs.

    Args:
        g: Graph to classify

    Returns:
        K2, EvenCycle(n) for n >= 4, Diamond, K4, C6bar, W5, or Other
    """
    support = g.to_networkx()
    n, m = support.number_of_nodes(), support.number_of_edges()
    if n == 2 and m == 1:
        return BaseTag.of(BaseKind.K2)
    if _is_even_cycle_support(support):
        return BaseTag.even_cycle(n)
    for kind, build in _FIXED_BASES:
        target = build().to_networkx()
        if n != target.number_of_nodes() or m != target.number_of_edges():
            continue
        if nx.is_isomorphic(support, target):
            return BaseTag.of(kind)
    return BaseTag.of(BaseKind.OTHER)


def quasi_diamond_chord(g: Multigraph) -> Optional[Tuple[int, int]]:
    """
    The chord of a quasi-diamond support, or None.

    A quasi-diamond is an even cycle of length at least four plus one chord
    joining two vertices at distance two on the cycle.
    """
    support = g.to_networkx()
    n = support.number_of_nodes()
    if n < 4 or n % 2 or support.number_of_edges() != n + 1:
        return None
    heavy = [v for v, d in support.degree if d == 3]
    if len(heavy) != 2 or any(d not in (2, 3) for _, d in support.degree):
        return None
    a, b = sorted(heavy)
    if not support.has_edge(a, b):
        return None
    rim = nx.Graph(support)
    rim.remove_edge(a, b)
    if not _is_even_cycle_support(rim):
        return None
    if not set(rim[a]) & set(rim[b]):
        return None
    return a, b


def is_quasi_diamond(g: Multigraph) -> bool:
    return quasi_diamond_chord(g) is not None
