"""
The three construction operations, their inverses, and certificate replay.

Numbering conventions (certificates depend on them):

- even subdivision removes the edge, renumbers the surviving edges densely,
  appends the path interior as new vertices walking from the edge's ``u``
  end to its ``v`` end, then appends the path edges;
- odd expansion keeps ``v' = v`` and every existing edge id, appends the path
  interior and then ``v''``, then the path edges and finally the bridge edges;
- multiedge replacement appends the new parallel copies.
"""
import logging
from typing import List, Sequence, Union

from cyclenice.errors import (
    BadMultiplicity,
    BadParity,
    BadPartition,
    CycleNiceError,
    EmptySide,
    NotAdmissible,
    PreconditionFailed,
    ReplayError,
)
from cyclenice.graph.families import base_graph
from cyclenice.graph.matching import is_admissible_edge
from cyclenice.graph.multigraph import Edge, Multigraph, contract, delete_vertices_with_mapping
from cyclenice.schemas import (
    ConstructionSequence,
    ConstructionStep,
    EvenSubdivision,
    MultiEdgeReplace,
    OddAExpansion,
    OddLExpansion,
)

logger = logging.getLogger(__name__)


def _path_through(start: int, first_new: int, path_len: int, end: int) -> List[int]:
    return [start] + list(range(first_new, first_new + path_len - 1)) + [end]


def apply_even_subdivision(g: Multigraph, edge_id: int, path_len: int) -> Multigraph:
    """
    Replace an edge by an odd path.

    Args:
        g: Input graph
        edge_id: Edge to replace
        path_len: Odd path length, at least 3

    Returns:
        Graph with path_len - 1 new vertices

    Raises:
        NoSuchEdge: If the edge does not exist
        BadParity: If path_len is even or shorter than 3
    """
    removed = g.edge(edge_id)
    if path_len < 3 or path_len % 2 == 0:
        raise BadParity(f"even subdivision needs an odd path of length >= 3, got {path_len}")
    n = g.vertex_count
    edges: List[Union[Edge, tuple]] = [e for e in g.edges if e.id != edge_id]
    path = _path_through(removed.u, n, path_len, removed.v)
    edges.extend(zip(path, path[1:]))
    return Multigraph(n + path_len - 1, edges)


def apply_odd_expansion(g: Multigraph, step: Union[OddLExpansion, OddAExpansion]) -> Multigraph:
    """
    Split a vertex in two and join the halves by an even path.

    ``side_a`` edges stay on v' (which keeps the label v); ``side_b`` edges
    move to the new vertex v''. An A-expansion also joins v' and v'' by
    ``bridge_mult`` parallel edges.

    Raises:
        NoSuchVertex: If the vertex does not exist
        EmptySide: If either side is empty
        BadPartition: If the sides do not partition the vertex's incident edges
        BadParity: If path_len is odd or shorter than 2
    """
    v = step.vertex
    incident = set(g.incident_edges(v))
    if not step.side_a or not step.side_b:
        raise EmptySide(f"both sides of vertex {v} need at least one edge")
    side_a, side_b = set(step.side_a), set(step.side_b)
    if (
        len(side_a) != len(step.side_a)
        or len(side_b) != len(step.side_b)
        or side_a & side_b
        or side_a | side_b != incident
    ):
        raise BadPartition(f"sides {sorted(side_a)} / {sorted(side_b)} do not partition the edges at {v}: {sorted(incident)}")
    if step.path_len < 2 or step.path_len % 2:
        raise BadParity(f"odd expansion needs an even path of length >= 2, got {step.path_len}")

    n = g.vertex_count
    split = n + step.path_len - 1
    edges: List[Union[Edge, tuple]] = []
    for e in g.edges:
        if e.id in side_b:
            u, w = (split, e.v) if e.u == v else (e.u, split)
            edges.append(Edge(e.id, u, w, e.marker))
        else:
            edges.append(e)
    path = _path_through(v, n, step.path_len, split)
    edges.extend(zip(path, path[1:]))
    if isinstance(step, OddAExpansion):
        edges.extend([(v, split)] * step.bridge_mult)
    return Multigraph(split + 1, edges)


def apply_multiedge_replace(g: Multigraph, edge_id: int, multiplicity: int, validate: bool = True) -> Multigraph:
    """
    Grow an edge's parallel class to an absolute size.

    Args:
        g: Input graph
        edge_id: Any edge of the class
        multiplicity: Target class size, at least the current one
        validate: Require the edge to be admissible; raw mode skips the check

    Raises:
        NoSuchEdge: If the edge does not exist
        BadMultiplicity: If multiplicity is below 2 or below the current size
        NotAdmissible: If validating and the edge lies in no perfect matching
    """
    e = g.edge(edge_id)
    current = g.multiplicity(e.u, e.v)
    if multiplicity < 2 or multiplicity < current:
        raise BadMultiplicity(f"class of edge {edge_id} has {current} edges, cannot set it to {multiplicity}")
    if validate and not is_admissible_edge(g, edge_id):
        raise NotAdmissible(f"edge {edge_id} ({e.u}, {e.v}) lies in no perfect matching")
    if multiplicity == current:
        return g
    return Multigraph(g.vertex_count, list(g.edges) + [(e.u, e.v)] * (multiplicity - current))


def apply_step(g: Multigraph, step: ConstructionStep, validate: bool = True) -> Multigraph:
    if isinstance(step, EvenSubdivision):
        return apply_even_subdivision(g, step.edge, step.path_len)
    if isinstance(step, OddLExpansion):
        return apply_odd_expansion(g, step)
    if isinstance(step, MultiEdgeReplace):
        return apply_multiedge_replace(g, step.edge, step.multiplicity, validate=validate)
    raise TypeError(f"unknown construction step {step!r}")


def replay(seq: ConstructionSequence) -> Multigraph:
    """
    Build the graph a certificate describes, validating every step.

    Raises:
        ReplayError: If a step fails; carries the step index and the cause
    """
    g = base_graph(seq.base)
    for index, step in enumerate(seq.steps):
        try:
            g = apply_step(g, step)
        except CycleNiceError as e:
            raise ReplayError(index, e) from e
    logger.debug(f"Replayed {seq.base.name} with {len(seq.steps)} steps into {g!r}")
    return g


def _check_thread(g: Multigraph, path: Sequence[int], what: str) -> None:
    if len(set(path)) != len(path):
        raise PreconditionFailed(f"{what} path {list(path)} repeats a vertex")
    for v in path:
        g.check_vertex(v)
    for a, b in zip(path, path[1:]):
        if g.multiplicity(a, b) != 1:
            raise PreconditionFailed(f"{what} path needs a single edge between {a} and {b}")
    for x in path[1:-1]:
        if g.degree(x) != 2:
            raise PreconditionFailed(f"{what} path vertex {x} has degree {g.degree(x)}")


def suppress_path(g: Multigraph, path: Sequence[int]) -> Multigraph:
    """
    Inverse of even subdivision: replace an odd path of 2-vertices by one edge.

    The interior vertices are deleted (remaining vertices renumber densely) and
    the new edge is appended after the surviving edges.
    """
    if len(path) < 4 or len(path) % 2:
        raise BadParity(f"suppression needs an odd path of length >= 3, got {len(path) - 1}")
    _check_thread(g, path, "suppressed")
    derived = delete_vertices_with_mapping(g, path[1:-1])
    a, b = derived.vertex_map[path[0]], derived.vertex_map[path[-1]]
    return Multigraph(derived.graph.vertex_count, list(derived.graph.edges) + [(a, b)])


def merge_path(g: Multigraph, path: Sequence[int]) -> Multigraph:
    """
    Inverse of odd expansion: contract an even path of 2-vertices with its ends.

    Edges joining the two ends (the bridges of an A-expansion) disappear.
    """
    if len(path) < 3 or len(path) % 2 == 0:
        raise BadParity(f"merging needs an even path of length >= 2, got {len(path) - 1}")
    _check_thread(g, path, "merged")
    return contract(g, path)


def collapse_class(g: Multigraph, edge_id: int) -> Multigraph:
    """Inverse of multiedge replacement: keep only the lowest edge of the class."""
    extra = set(g.class_of(edge_id).edge_ids[1:])
    return Multigraph(g.vertex_count, [e for e in g.edges if e.id not in extra])


def load_sequence(text: str) -> ConstructionSequence:
    """Parse certificate JSON; raises pydantic.ValidationError on bad input."""
    return ConstructionSequence.model_validate_json(text)


def dump_sequence(seq: ConstructionSequence) -> str:
    return seq.model_dump_json(indent=2, exclude_none=True)
