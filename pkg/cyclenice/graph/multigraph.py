"""
Loopless multigraph kernel.

Vertices are ``0..vertex_count-1`` and edge ids are dense ``0..m-1``.
Values are immutable; every operation returns a new graph.
"""
import logging
from functools import cached_property
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Sequence, Set, Tuple, Union

import networkx as nx

from cyclenice.errors import (
    BadVertexSet,
    EmptySet,
    FullSet,
    LoopError,
    NoSuchEdge,
    NoSuchVertex,
    Not2Connected,
    NotACut,
    NotConnected,
)

logger = logging.getLogger(__name__)


class Edge(NamedTuple):
    id: int
    u: int
    v: int
    marker: bool = False

    @property
    def key(self) -> Tuple[int, int]:
        """Unordered endpoint pair as (min, max)."""
        return (self.u, self.v) if self.u < self.v else (self.v, self.u)

    def other(self, x: int) -> int:
        return self.v if x == self.u else self.u


class ParallelClass(NamedTuple):
    endpoints: Tuple[int, int]
    edge_ids: Tuple[int, ...]

    @property
    def multiplicity(self) -> int:
        return len(self.edge_ids)

    @property
    def representative(self) -> int:
        return self.edge_ids[0]


class TwoCut(NamedTuple):
    u: int
    v: int


EdgeLike = Union[Edge, Tuple[int, int], Tuple[int, int, bool]]


class Multigraph:
    """Immutable loopless multigraph with parallel-edge classes.

    Marker edges (added by marked K-components) carry a provenance flag;
    equality ignores it.
    """

    def __init__(self, vertex_count: int, edges: Iterable[EdgeLike] = ()):
        if vertex_count < 0:
            raise BadVertexSet(f"vertex_count must be nonnegative, got {vertex_count}")
        built: List[Edge] = []
        for idx, item in enumerate(edges):
            if isinstance(item, Edge):
                u, v, marker = item.u, item.v, item.marker
            elif len(item) == 3:
                u, v, marker = item  # type: ignore[misc]
            else:
                u, v = item  # type: ignore[misc]
                marker = False
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise NoSuchVertex(f"edge {idx} ({u}, {v}) leaves 0..{vertex_count - 1}")
            if u == v:
                raise LoopError(f"edge {idx} is a loop at vertex {u}")
            built.append(Edge(idx, u, v, bool(marker)))
        self._n = vertex_count
        self._edges: Tuple[Edge, ...] = tuple(built)

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "Multigraph":
        """
        Convert a networkx (multi)graph, numbering nodes in iteration order.

        Edges are sorted by their renumbered endpoint pair so the result does
        not depend on networkx adjacency order.

        Args:
            graph: networkx Graph or MultiGraph without self-loops

        Returns:
            Multigraph with one edge per networkx edge
        """
        index = {node: i for i, node in enumerate(graph.nodes)}
        pairs = []
        for a, b in graph.edges():
            u, v = index[a], index[b]
            pairs.append((u, v) if u < v else (v, u))
        pairs.sort()
        return cls(len(index), pairs)

    # -- basic accessors -------------------------------------------------

    @property
    def vertex_count(self) -> int:
        return self._n

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> Tuple[Edge, ...]:
        return self._edges

    @property
    def vertices(self) -> range:
        return range(self._n)

    def edge(self, edge_id: int) -> Edge:
        if not 0 <= edge_id < len(self._edges):
            raise NoSuchEdge(f"no edge {edge_id} (graph has {len(self._edges)} edges)")
        return self._edges[edge_id]

    def check_vertex(self, v: int) -> None:
        if not 0 <= v < self._n:
            raise NoSuchVertex(f"no vertex {v} (graph has {self._n} vertices)")

    @cached_property
    def _classes(self) -> Dict[Tuple[int, int], Tuple[int, ...]]:
        grouped: Dict[Tuple[int, int], List[int]] = {}
        for e in self._edges:
            grouped.setdefault(e.key, []).append(e.id)
        return {key: tuple(ids) for key, ids in grouped.items()}

    @cached_property
    def _incidence(self) -> Tuple[Tuple[int, ...], ...]:
        incident: List[List[int]] = [[] for _ in range(self._n)]
        for e in self._edges:
            incident[e.u].append(e.id)
            incident[e.v].append(e.id)
        return tuple(tuple(ids) for ids in incident)

    def parallel_classes(self) -> List[ParallelClass]:
        """Parallel classes ordered by their lowest edge id."""
        return [ParallelClass(key, ids) for key, ids in self._classes.items()]

    def class_of(self, edge_id: int) -> ParallelClass:
        key = self.edge(edge_id).key
        return ParallelClass(key, self._classes[key])

    def edges_between(self, u: int, v: int) -> Tuple[int, ...]:
        key = (u, v) if u < v else (v, u)
        return self._classes.get(key, ())

    def multiplicity(self, u: int, v: int) -> int:
        return len(self.edges_between(u, v))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.edges_between(u, v))

    def incident_edges(self, v: int) -> Tuple[int, ...]:
        self.check_vertex(v)
        return self._incidence[v]

    def neighbours(self, v: int) -> List[int]:
        return sorted({self._edges[i].other(v) for i in self.incident_edges(v)})

    def degree(self, v: int) -> int:
        return len(self.incident_edges(v))

    @property
    def is_simple(self) -> bool:
        return len(self._classes) == len(self._edges)

    @property
    def max_multiplicity(self) -> int:
        return max((len(ids) for ids in self._classes.values()), default=0)

    # -- networkx views --------------------------------------------------

    @cached_property
    def _support(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self._n))
        graph.add_edges_from(self._classes.keys())
        return nx.freeze(graph)

    def to_networkx(self) -> nx.Graph:
        """Frozen networkx view of the underlying simple graph."""
        return self._support

    def to_multigraph_networkx(self) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        graph.add_nodes_from(range(self._n))
        graph.add_edges_from((e.u, e.v) for e in self._edges)
        return graph

    # -- value semantics -------------------------------------------------

    def _signature(self) -> Tuple[int, Tuple[Tuple[int, int], ...]]:
        return self._n, tuple(e.key for e in self._edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self._signature() == other._signature()

    def __hash__(self) -> int:
        return hash(self._signature())

    def __repr__(self) -> str:
        return f"Multigraph(n={self._n}, m={len(self._edges)})"


class Derived(NamedTuple):
    """A graph derived from a parent, with the bookkeeping to map back.

    ``vertex_map`` sends parent vertices to derived vertices (deleted
    vertices are absent). ``edge_origin[i]`` is the parent id of derived
    edge ``i``, or None for marker edges.
    """
    graph: Multigraph
    vertex_map: Dict[int, int]
    edge_origin: Tuple[Optional[int], ...]

    def vertex_origin(self) -> Dict[int, int]:
        """Derived vertex -> parent vertex, for vertices with a single preimage."""
        preimages: Dict[int, List[int]] = {}
        for old, new in self.vertex_map.items():
            preimages.setdefault(new, []).append(old)
        return {new: olds[0] for new, olds in preimages.items() if len(olds) == 1}


def _check_vertex_set(g: Multigraph, s: Iterable[int]) -> FrozenSet[int]:
    vertex_set = frozenset(s)
    bad = [v for v in vertex_set if not 0 <= v < g.vertex_count]
    if bad:
        raise BadVertexSet(f"vertices {sorted(bad)} are not in the graph")
    return vertex_set


def underlying_simple(g: Multigraph) -> Multigraph:
    """One edge per parallel class, ordered by the class's lowest edge id."""
    return Multigraph(g.vertex_count, [cls.endpoints for cls in g.parallel_classes()])


def delete_vertices_with_mapping(g: Multigraph, s: Iterable[int]) -> Derived:
    removed = _check_vertex_set(g, s)
    kept = [v for v in g.vertices if v not in removed]
    vertex_map = {old: new for new, old in enumerate(kept)}
    edges = []
    origin = []
    for e in g.edges:
        if e.u in vertex_map and e.v in vertex_map:
            edges.append(Edge(len(edges), vertex_map[e.u], vertex_map[e.v], e.marker))
            origin.append(e.id)
    return Derived(Multigraph(len(kept), edges), vertex_map, tuple(origin))


def delete_vertices(g: Multigraph, s: Iterable[int]) -> Multigraph:
    """Induced subgraph on the vertices not in ``s``, renumbered densely."""
    return delete_vertices_with_mapping(g, s).graph


def contract_with_mapping(g: Multigraph, s: Iterable[int]) -> Derived:
    """
    Merge the vertices of ``s`` into one vertex.

    The merged vertex takes the position of ``min(s)`` in the dense
    renumbering. Edges inside ``s`` are dropped; edges of the cut keep
    their multiplicity.

    Args:
        g: Graph to contract
        s: Nonempty proper vertex subset

    Returns:
        Derived graph with parent->child vertex map and edge origins

    Raises:
        EmptySet: If s is empty
        FullSet: If s is all of V(g)
        NotConnected: If g is not connected
    """
    merged = _check_vertex_set(g, s)
    if not merged:
        raise EmptySet("cannot contract an empty vertex set")
    if len(merged) == g.vertex_count:
        raise FullSet("cannot contract the whole vertex set")
    if not is_connected(g):
        raise NotConnected(f"cannot contract inside a disconnected graph {g!r}")
    anchor = min(merged)
    vertex_map: Dict[int, int] = {}
    next_index = 0
    for v in g.vertices:
        if v in merged and v != anchor:
            continue
        vertex_map[v] = next_index
        next_index += 1
    for v in merged:
        vertex_map[v] = vertex_map[anchor]
    edges = []
    origin = []
    for e in g.edges:
        if e.u in merged and e.v in merged:
            continue
        edges.append(Edge(len(edges), vertex_map[e.u], vertex_map[e.v], e.marker))
        origin.append(e.id)
    return Derived(Multigraph(next_index, edges), vertex_map, tuple(origin))


def contract(g: Multigraph, s: Iterable[int]) -> Multigraph:
    return contract_with_mapping(g, s).graph


def components(g: Multigraph, deleted: Iterable[int] = ()) -> List[FrozenSet[int]]:
    """Connected components of g - deleted, ordered by minimum vertex."""
    removed = _check_vertex_set(g, deleted)
    support = g.to_networkx()
    remaining = support.subgraph(v for v in g.vertices if v not in removed)
    parts = [frozenset(c) for c in nx.connected_components(remaining)]
    return sorted(parts, key=min)


def is_connected(g: Multigraph) -> bool:
    return g.vertex_count > 0 and len(components(g)) == 1


def is_k_connected(g: Multigraph, k: int) -> bool:
    """
    Vertex k-connectivity of the underlying simple graph.

    A graph on at most k vertices is never k-connected (K_n is
    (n-1)-connected).

    Args:
        g: Graph to test
        k: 1, 2 or 3

    Returns:
        True iff g is connected and no set of fewer than k vertices disconnects it
    """
    if k not in (1, 2, 3):
        raise ValueError(f"k must be 1, 2 or 3, got {k}")
    if g.vertex_count <= k:
        return False
    if not is_connected(g):
        return False
    if k == 1:
        return True
    return nx.node_connectivity(g.to_networkx()) >= k


def is_nonseparable(g: Multigraph) -> bool:
    """2-connected, counting a 2-vertex graph with a parallel class as a cycle."""
    if g.vertex_count == 2:
        return g.multiplicity(0, 1) >= 2
    return is_k_connected(g, 2)


def _separates(g: Multigraph, u: int, v: int) -> bool:
    rest = [x for x in g.vertices if x != u and x != v]
    if not rest:
        return False
    return not nx.is_connected(g.to_networkx().subgraph(rest))


def two_cuts(g: Multigraph) -> List[TwoCut]:
    """
    All 2-vertex cuts in lexicographic order.

    Raises:
        Not2Connected: If g is not 2-connected
    """
    if not is_k_connected(g, 2):
        raise Not2Connected(f"{g!r} is not 2-connected")
    return [TwoCut(u, v) for u, v in combinations(g.vertices, 2) if _separates(g, u, v)]


def marked_k_components_with_mapping(g: Multigraph, k: Tuple[int, int]) -> List[Derived]:
    """
    Marked K-components of a 2-vertex cut, one per component of g - K.

    Each piece is induced by the component plus both cut vertices, with one
    extra marker edge joining the cut vertices (``edge_origin`` is None for
    it). Pieces are ordered by the minimum vertex of their component.

    Raises:
        NotACut: If k does not disconnect g
    """
    u, v = k
    g.check_vertex(u)
    g.check_vertex(v)
    if u == v or not _separates(g, u, v):
        raise NotACut(f"{{{u}, {v}}} is not a 2-vertex cut")
    pieces = []
    for part in components(g, (u, v)):
        keep = set(part) | {u, v}
        derived = delete_vertices_with_mapping(g, [x for x in g.vertices if x not in keep])
        marker = Edge(derived.graph.edge_count, derived.vertex_map[u], derived.vertex_map[v], True)
        graph = Multigraph(derived.graph.vertex_count, list(derived.graph.edges) + [marker])
        pieces.append(Derived(graph, derived.vertex_map, derived.edge_origin + (None,)))
    return pieces


def marked_k_components(g: Multigraph, k: Tuple[int, int]) -> List[Multigraph]:
    return [piece.graph for piece in marked_k_components_with_mapping(g, k)]


def are_isomorphic(g: Multigraph, h: Multigraph) -> bool:
    """Multigraph isomorphism respecting edge multiplicities."""
    if g.vertex_count != h.vertex_count or g.edge_count != h.edge_count:
        return False
    if sorted(c.multiplicity for c in g.parallel_classes()) != sorted(c.multiplicity for c in h.parallel_classes()):
        return False
    return nx.is_isomorphic(g.to_multigraph_networkx(), h.to_multigraph_networkx())


def support_isomorphism(g: Multigraph, h: Multigraph) -> Optional[Dict[int, int]]:
    """A vertex bijection V(g) -> V(h) between underlying simple graphs, or None."""
    matcher = nx.isomorphism.GraphMatcher(g.to_networkx(), h.to_networkx())
    if not matcher.is_isomorphic():
        return None
    return dict(matcher.mapping)


def path_vertices(g: Multigraph, vertices: Set[int], start: int, end: int) -> Optional[List[int]]:
    """
    The vertex order of a ``start``-``end`` path spanning ``vertices``.

    Only the underlying simple graph induced on ``vertices`` is considered,
    minus any start-end edge. Returns None unless that graph is exactly a
    path with the given ends.
    """
    support = nx.Graph(g.to_networkx().subgraph(vertices))
    if support.has_edge(start, end):
        support.remove_edge(start, end)
    if support.number_of_edges() != len(vertices) - 1 or not nx.is_connected(support):
        return None
    if support.degree(start) != 1 or support.degree(end) != 1:
        return None
    if any(support.degree(x) != 2 for x in vertices if x not in (start, end)):
        return None
    return nx.shortest_path(support, start, end)


def path_edge_ids(g: Multigraph, path: Sequence[int]) -> List[int]:
    """Lowest-id edge between each pair of consecutive path vertices."""
    return [g.edges_between(a, b)[0] for a, b in zip(path, path[1:])]
