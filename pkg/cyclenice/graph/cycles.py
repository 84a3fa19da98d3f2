"""
Even cycles, the brute-force cycle-nice oracle, and ear decompositions.
"""
import logging
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

import networkx as nx
from pydantic import ValidationError

from cyclenice.config import get_settings
from cyclenice.errors import BudgetExceeded, CapExceeded, CycleNiceError, NotACycle, PreconditionFailed
from cyclenice.graph.matching import has_perfect_matching, is_matching_covered, is_nice_subgraph
from cyclenice.graph.multigraph import Multigraph, path_edge_ids
from cyclenice.schemas import CycleSpec, Ear, EarDecomposition, OracleVerdict

logger = logging.getLogger(__name__)

VertexCycle = Tuple[int, ...]


def _canonical_rotation(cycle: Sequence[int]) -> VertexCycle:
    """Start at the smallest vertex and walk towards its smaller neighbour."""
    k = len(cycle)
    start = min(range(k), key=cycle.__getitem__)
    forward = tuple(cycle[(start + i) % k] for i in range(k))
    backward = tuple(cycle[(start - i) % k] for i in range(k))
    return min(forward, backward)


def _even_cycle_sequences(g: Multigraph, cap: int) -> List[VertexCycle]:
    sequences: List[VertexCycle] = [
        cls.endpoints for cls in g.parallel_classes() if cls.multiplicity >= 2
    ]
    if len(sequences) > cap:
        raise CapExceeded(cap)
    for cycle in nx.simple_cycles(g.to_networkx()):
        if len(cycle) % 2:
            continue
        sequences.append(_canonical_rotation(cycle))
        if len(sequences) > cap:
            raise CapExceeded(cap)
    sequences.sort(key=lambda seq: (len(seq), seq))
    return sequences


def cycle_from_vertices(g: Multigraph, vertices: Sequence[int]) -> CycleSpec:
    """
    Build a cycle from its cyclic vertex sequence using lowest-id edges.

    A two-vertex sequence uses the two lowest edges of its parallel class.

    Raises:
        NotACycle: If consecutive vertices are not adjacent or the sequence is not a cycle
    """
    vertices = list(vertices)
    if len(vertices) < 2 or len(set(vertices)) != len(vertices):
        raise NotACycle(f"{vertices} is not a cyclic sequence of distinct vertices")
    for v in vertices:
        if not 0 <= v < g.vertex_count:
            raise NotACycle(f"vertex {v} is not in the graph")
    if len(vertices) == 2:
        between = g.edges_between(*vertices)
        if len(between) < 2:
            raise NotACycle(f"{vertices} needs two parallel edges to form a cycle")
        return CycleSpec(vertices=vertices, edge_ids=list(between[:2]))
    closed = vertices + [vertices[0]]
    if any(not g.has_edge(a, b) for a, b in zip(closed, closed[1:])):
        raise NotACycle(f"{vertices} skips a non-edge")
    return CycleSpec(vertices=vertices, edge_ids=path_edge_ids(g, closed))


def validate_cycle(g: Multigraph, c: CycleSpec) -> None:
    """Raise NotACycle unless every edge of c joins the vertices it sits between."""
    k = c.length
    for i, edge_id in enumerate(c.edge_ids):
        if not 0 <= edge_id < g.edge_count:
            raise NotACycle(f"edge {edge_id} is not in the graph")
        a, b = c.vertices[i], c.vertices[(i + 1) % k]
        if g.edge(edge_id).key != (min(a, b), max(a, b)):
            raise NotACycle(f"edge {edge_id} does not join {a} and {b}")


def enumerate_even_cycles(g: Multigraph, cap: Optional[int] = None) -> List[CycleSpec]:
    """
    All even cycles of g, sorted by (length, vertex sequence).

    Cycles of length at least four come from the simple support, one per
    support cycle; every parallel class of multiplicity two or more adds one
    2-cycle.

    The cap counts collected even cycles only. Odd cycles of the support are
    still visited and discarded, so on graphs whose cycles are mostly odd the
    enumeration can run long before the cap is reached.

    Args:
        g: Host multigraph
        cap: Largest number of cycles to collect (defaults to settings)

    Returns:
        CycleSpec list

    Raises:
        CapExceeded: If g has more than cap even cycles
    """
    cap = cap if cap is not None else get_settings().cycle_cap
    return [cycle_from_vertices(g, seq) for seq in _even_cycle_sequences(g, cap)]


def is_nice_cycle(g: Multigraph, c: CycleSpec) -> bool:
    validate_cycle(g, c)
    return is_nice_subgraph(g, c.vertices)


def cycle_nice_oracle(g: Multigraph, cap: Optional[int] = None) -> OracleVerdict:
    """
    Decide cycle-niceness by checking every even cycle.

    Cycles are checked in enumeration order, so the witness is the first
    non-nice cycle by (length, vertex sequence).

    Raises:
        CapExceeded: If g has more than cap even cycles
    """
    cap = cap if cap is not None else get_settings().cycle_cap
    if not has_perfect_matching(g):
        return OracleVerdict.not_matchable()
    sequences = _even_cycle_sequences(g, cap)
    logger.debug(f"Oracle checking {len(sequences)} even cycles of {g!r}")
    nice: Dict[FrozenSet[int], bool] = {}
    for seq in sequences:
        key = frozenset(seq)
        if key not in nice:
            nice[key] = is_nice_subgraph(g, key)
        if not nice[key]:
            return OracleVerdict.with_witness(cycle_from_vertices(g, seq))
    return OracleVerdict.cycle_nice()


class _EarSearch:
    """Depth-first search for odd ears, memoizing covered sets that fail."""

    def __init__(self, g: Multigraph, budget: int):
        self.g = g
        self.support = g.to_networkx()
        self.budget = budget
        self.nodes = 0
        self.failed: Set[FrozenSet[int]] = set()

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(self.budget)

    def _candidates(self, covered: FrozenSet[int]) -> List[List[int]]:
        outside = [v for v in self.g.vertices if v not in covered]
        touching = sorted(v for v in covered if any(w not in covered for w in self.support[v]))
        found = []
        for a, b in combinations(touching, 2):
            view = self.support.subgraph(outside + [a, b])
            for path in nx.all_simple_paths(view, a, b):
                self._tick()
                if len(path) >= 4 and len(path) % 2 == 0:
                    found.append(path)
        found.sort(key=lambda p: (len(p), p))
        return found

    def search(self, covered: FrozenSet[int]) -> Optional[List[List[int]]]:
        if len(covered) == self.g.vertex_count:
            return []
        if covered in self.failed:
            return None
        self._tick()
        for path in self._candidates(covered):
            rest = self.search(covered | frozenset(path))
            if rest is not None:
                return [path] + rest
        self.failed.add(covered)
        return None


def ear_decomposition(g: Multigraph, initial_cycle: CycleSpec, budget: Optional[int] = None) -> EarDecomposition:
    """
    Ear decomposition of a matching covered graph starting from a nice even cycle.

    Ears of length at least three are found by backtracking in (length,
    vertex sequence) order; every edge that joins two already covered vertices
    is added as a single-edge ear as soon as it becomes available.

    Args:
        g: Matching covered multigraph
        initial_cycle: Nice even cycle of g
        budget: Search node limit (defaults to settings)

    Returns:
        EarDecomposition whose union is g

    Raises:
        PreconditionFailed: If g is not matching covered or the cycle is odd or not nice
        NotACycle: If initial_cycle is not a cycle of g
        BudgetExceeded: If the search visits more than budget nodes
    """
    budget = budget if budget is not None else get_settings().ear_budget
    validate_cycle(g, initial_cycle)
    if not is_matching_covered(g):
        raise PreconditionFailed("graph is not matching covered")
    if not initial_cycle.is_even:
        raise PreconditionFailed(f"initial cycle has odd length {initial_cycle.length}")
    if not is_nice_subgraph(g, initial_cycle.vertices):
        raise PreconditionFailed("initial cycle is not nice")

    covered = frozenset(initial_cycle.vertices)
    paths = _EarSearch(g, budget).search(covered)
    if paths is None:
        raise PreconditionFailed("no ear decomposition starts from this cycle")

    used = set(initial_cycle.edge_ids)
    ears: List[Ear] = []

    def add_single_edges() -> None:
        for e in g.edges:
            if e.id not in used and e.u in covered and e.v in covered:
                used.add(e.id)
                ears.append(Ear(vertices=[e.u, e.v], edge_ids=[e.id]))

    add_single_edges()
    for path in paths:
        edge_ids = path_edge_ids(g, path)
        used.update(edge_ids)
        covered = covered | frozenset(path)
        ears.append(Ear(vertices=list(path), edge_ids=edge_ids))
        add_single_edges()
    logger.debug(f"Ear decomposition with {len(ears)} ears after {len(paths)} long ears")
    return EarDecomposition(
        initial_vertices=list(initial_cycle.vertices),
        initial_edge_ids=list(initial_cycle.edge_ids),
        ears=ears,
    )


def validate_ear_decomposition(g: Multigraph, dec: EarDecomposition) -> List[str]:
    """
    Check the structural conditions of an ear decomposition.

    Returns:
        Human-readable problems; an empty list means the decomposition is valid
    """
    problems: List[str] = []
    try:
        initial = CycleSpec(vertices=dec.initial_vertices, edge_ids=dec.initial_edge_ids)
        validate_cycle(g, initial)
    except (ValidationError, CycleNiceError) as e:
        return [f"initial subgraph is not a cycle of the graph: {e}"]
    covered = set(initial.vertices)
    used = set(initial.edge_ids)
    for index, ear in enumerate(dec.ears):
        where = f"ear {index}"
        if ear.length % 2 == 0:
            problems.append(f"{where} has even length {ear.length}")
        if len(ear.vertices) != ear.length + 1:
            problems.append(f"{where} lists {len(ear.vertices)} vertices for {ear.length} edges")
            continue
        ends, interior = (ear.vertices[0], ear.vertices[-1]), ear.vertices[1:-1]
        if ends[0] == ends[1]:
            problems.append(f"{where} is closed at vertex {ends[0]}")
        if any(v not in covered for v in ends):
            problems.append(f"{where} has an end outside the earlier subgraph")
        if any(v in covered for v in interior) or len(set(interior)) != len(interior):
            problems.append(f"{where} has an interior vertex that is not new")
        for i, edge_id in enumerate(ear.edge_ids):
            a, b = ear.vertices[i], ear.vertices[i + 1]
            if not 0 <= edge_id < g.edge_count or g.edge(edge_id).key != (min(a, b), max(a, b)):
                problems.append(f"{where} edge {edge_id} does not join {a} and {b}")
            elif edge_id in used:
                problems.append(f"{where} reuses edge {edge_id}")
            used.add(edge_id)
        covered.update(ear.vertices)
    if len(covered) != g.vertex_count:
        problems.append(f"{g.vertex_count - len(covered)} vertices are never covered")
    if len(used) != g.edge_count:
        problems.append(f"{len(set(range(g.edge_count)) - used)} edges are never used")
    return problems
