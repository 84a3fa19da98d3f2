"""
Matching engine on loopless multigraphs.

Matchings are computed on the simple support with networkx's blossom
implementation; at most one edge per parallel class is ever useful, so each
matched pair is reported through its lowest edge id.
"""
import logging
from typing import FrozenSet, Iterable, Optional

import networkx as nx

from cyclenice.errors import BadVertexSet
from cyclenice.graph.multigraph import Multigraph, delete_vertices, is_connected

logger = logging.getLogger(__name__)


class Matching:
    """A set of pairwise disjoint edges of a host graph."""

    def __init__(self, edge_ids: Iterable[int], covered: Iterable[int]):
        self.edge_ids: FrozenSet[int] = frozenset(edge_ids)
        self._covered: FrozenSet[int] = frozenset(covered)

    @classmethod
    def from_edges(cls, g: Multigraph, edge_ids: Iterable[int]) -> "Matching":
        ids = sorted(set(edge_ids))
        covered = set()
        for i in ids:
            e = g.edge(i)
            if e.u in covered or e.v in covered:
                raise ValueError(f"edge {i} shares an endpoint with another matching edge")
            covered.update((e.u, e.v))
        return cls(ids, covered)

    @property
    def size(self) -> int:
        return len(self.edge_ids)

    def covers(self, v: int) -> bool:
        return v in self._covered

    def __repr__(self) -> str:
        return f"Matching({sorted(self.edge_ids)})"


def maximum_matching(g: Multigraph) -> Matching:
    """
    Maximum-cardinality matching.

    Args:
        g: Host multigraph

    Returns:
        Matching whose edges are lowest-id representatives of their classes
    """
    pairs = nx.max_weight_matching(g.to_networkx(), maxcardinality=True)
    edge_ids = sorted(g.edges_between(a, b)[0] for a, b in pairs)
    return Matching.from_edges(g, edge_ids)


def perfect_matching(g: Multigraph) -> Optional[Matching]:
    """A perfect matching of g, or None if there is none."""
    if g.vertex_count % 2:
        return None
    matching = maximum_matching(g)
    if 2 * matching.size != g.vertex_count:
        return None
    return matching


def has_perfect_matching(g: Multigraph) -> bool:
    return perfect_matching(g) is not None


def is_nice_subgraph(g: Multigraph, h: Iterable[int]) -> bool:
    """
    Whether deleting the vertex set ``h`` leaves a graph with a perfect matching.

    Raises:
        BadVertexSet: If h contains a vertex outside g
    """
    vertex_set = frozenset(h)
    bad = sorted(v for v in vertex_set if not 0 <= v < g.vertex_count)
    if bad:
        raise BadVertexSet(f"vertices {bad} are not in the graph")
    if (g.vertex_count - len(vertex_set)) % 2:
        return False
    return has_perfect_matching(delete_vertices(g, vertex_set))


def is_admissible_edge(g: Multigraph, edge_id: int) -> bool:
    """An edge is admissible when some perfect matching contains it."""
    e = g.edge(edge_id)
    return is_nice_subgraph(g, (e.u, e.v))


def is_matching_covered(g: Multigraph) -> bool:
    """Connected, perfectly matchable, and every edge admissible."""
    if not is_connected(g) or not has_perfect_matching(g):
        return False
    for cls in g.parallel_classes():
        if not is_admissible_edge(g, cls.representative):
            logger.debug(f"Edge class {cls.endpoints} is not admissible")
            return False
    return True
