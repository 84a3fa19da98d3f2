"""
Structural recognizer for cycle-nice graphs.

For a 2-connected, claw-free, planar multigraph the recognizer either builds a
construction certificate (a base graph plus even subdivisions, odd
L-expansions and multiedge replacements that rebuild the input) or returns an
even cycle that is not nice. The recursion splits along a 2-vertex cut:

- if one side is an odd path, the other side's marked component is certified
  and the marker edge is subdivided back into the path;
- if one side is an even path and the cut vertices are adjacent, the graph
  must be a quasi-diamond;
- if one side is an even path and the cut vertices are not adjacent, the path
  and both cut vertices are contracted, the contraction is certified, and an
  odd L-expansion restores the path;
- if neither side is a path, two cut-to-cut paths of matching parity give a
  non-nice even cycle.
"""
import logging
from typing import Dict, FrozenSet, List, NamedTuple, Optional, Sequence, Tuple, Union

import networkx as nx

from cyclenice.config import get_settings
from cyclenice.construction.operations import (
    apply_even_subdivision,
    apply_multiedge_replace,
    apply_odd_expansion,
    replay,
)
from cyclenice.errors import InvariantViolation, NotACycle, ReplayError
from cyclenice.graph.cycles import cycle_from_vertices, cycle_nice_oracle, validate_cycle
from cyclenice.graph.families import base_graph, diamond
from cyclenice.graph.matching import has_perfect_matching, is_admissible_edge, is_nice_subgraph
from cyclenice.graph.multigraph import (
    Derived,
    Multigraph,
    components,
    contract_with_mapping,
    is_nonseparable,
    marked_k_components_with_mapping,
    path_edge_ids,
    path_vertices,
    support_isomorphism,
    two_cuts,
)
from cyclenice.graph.predicates import identify_base, is_claw_free, is_planar, is_quasi_diamond
from cyclenice.schemas import (
    FAMILY_KINDS,
    BaseKind,
    BaseTag,
    ConstructionSequence,
    ConstructionStep,
    CycleSpec,
    EvenSubdivision,
    MultiEdgeReplace,
    OddLExpansion,
    Verdict,
    VerdictReason,
)

logger = logging.getLogger(__name__)

W5_NOTE = "simple support is W5; decided by the cycle oracle"


class _Certified(NamedTuple):
    """A certificate for the current graph.

    ``graph`` is the replay of ``base`` + ``steps``; ``phi`` maps its vertices
    onto the current graph's vertices and is an isomorphism. ``needs_oracle``
    is set when an odd L-expansion split a vertex into two halves that both
    keep two or more neighbours; an even cycle through both halves that avoids
    the new path is then not nice, so the result must be confirmed.
    """
    base: BaseTag
    steps: List[ConstructionStep]
    graph: Multigraph
    phi: Dict[int, int]
    needs_oracle: bool = False


class _Rejected(NamedTuple):
    witness: Optional[CycleSpec]


_Outcome = Union[_Certified, _Rejected]


def _invert(mapping: Dict[int, int]) -> Dict[int, int]:
    return {value: key for key, value in mapping.items()}


def check_correspondence(r: Multigraph, g: Multigraph, phi: Dict[int, int]) -> None:
    """
    Check that ``phi`` is a multigraph isomorphism from ``r`` onto ``g``.

    Raises:
        InvariantViolation: If any vertex or parallel class fails to correspond
    """
    if (
        r.vertex_count != g.vertex_count
        or r.edge_count != g.edge_count
        or sorted(phi) != list(r.vertices)
        or sorted(phi.values()) != list(g.vertices)
    ):
        raise InvariantViolation(f"vertex map does not match {r!r} to {g!r}")
    for cls in r.parallel_classes():
        a, b = cls.endpoints
        if g.multiplicity(phi[a], phi[b]) != cls.multiplicity:
            raise InvariantViolation(f"class {cls.endpoints} maps to a class of different size")


def is_witness(g: Multigraph, c: CycleSpec) -> bool:
    """Whether c is an even cycle of g whose removal leaves no perfect matching."""
    try:
        validate_cycle(g, c)
    except NotACycle:
        return False
    return c.is_even and not is_nice_subgraph(g, c.vertices)


class _Walk:
    """Closed walk being assembled; edge i joins vertex i and vertex i+1."""

    def __init__(self) -> None:
        self.vertices: List[int] = []
        self.edge_ids: List[int] = []

    def step(self, edge_id: int, vertex: int) -> None:
        self.edge_ids.append(edge_id)
        self.vertices.append(vertex)

    def follow(self, g: Multigraph, path: Sequence[int]) -> None:
        """Extend along ``path`` whose first vertex is the current end."""
        for edge_id, vertex in zip(path_edge_ids(g, path), path[1:]):
            self.step(edge_id, vertex)

    def close(self, edge_id: int) -> CycleSpec:
        self.edge_ids.append(edge_id)
        return CycleSpec(vertices=self.vertices, edge_ids=self.edge_ids)


def _oriented(path: Sequence[int], start: int) -> List[int]:
    return list(path) if path[0] == start else list(reversed(path))


def _lift_through_marker(c: CycleSpec, piece: Derived, g: Multigraph, path: Sequence[int]) -> CycleSpec:
    """Map a cycle of a marked component back to g, replacing the marker by ``path``."""
    origin = piece.vertex_origin()
    k = c.length
    walk = _Walk()
    walk.vertices.append(origin[c.vertices[0]])
    for i, edge_id in enumerate(c.edge_ids):
        nxt = origin[c.vertices[(i + 1) % k]]
        parent_edge = piece.edge_origin[edge_id]
        if parent_edge is None:
            segment = _oriented(path, walk.vertices[-1])
            walk.follow(g, segment[:-1])
            parent_edge = path_edge_ids(g, segment)[-1]
        if i == k - 1:
            return walk.close(parent_edge)
        walk.step(parent_edge, nxt)
    raise InvariantViolation("empty cycle")


def _lift_through_contraction(
    c: CycleSpec, derived: Derived, g: Multigraph, cut: Tuple[int, int], path: Sequence[int]
) -> CycleSpec:
    """Map a cycle of the contracted graph back to g, re-inserting ``path`` where needed."""
    x = derived.vertex_map[cut[0]]
    origin = derived.vertex_origin()
    k = c.length
    start = next(i for i in range(k) if c.vertices[i] != x)
    vertices = [c.vertices[(start + i) % k] for i in range(k)]
    edges = [derived.edge_origin[c.edge_ids[(start + i) % k]] for i in range(k)]

    def attach(edge_id: int) -> int:
        e = g.edge(edge_id)
        return e.u if e.u in cut else e.v

    walk = _Walk()
    walk.vertices.append(origin[vertices[0]])
    for i in range(k):
        if i == k - 1:
            return walk.close(edges[i])
        nxt = vertices[i + 1]
        if nxt != x:
            walk.step(edges[i], origin[nxt])
            continue
        entry, leave = attach(edges[i]), attach(edges[i + 1])
        walk.step(edges[i], entry)
        if entry != leave:
            walk.follow(g, _oriented(path, entry))
    raise InvariantViolation("empty cycle")


class StructuralRecognizer:
    """Recursive 2-cut decomposition producing certificates or witnesses."""

    def __init__(self, claim_path_cap: Optional[int] = None):
        self.claim_path_cap = claim_path_cap if claim_path_cap is not None else get_settings().claim_path_cap

    def certify(self, g: Multigraph) -> _Outcome:
        return self._certify(g, 0)

    def _certify(self, g: Multigraph, depth: int) -> _Outcome:
        if not is_nonseparable(g):
            raise InvariantViolation(f"recursion reached a separable graph {g!r}")
        if g.vertex_count % 2:
            return _Rejected(None)
        tag = BaseTag.even_cycle(2) if g.vertex_count == 2 else identify_base(g)
        if tag.kind in FAMILY_KINDS:
            logger.debug(f"[depth {depth}] base {tag.name}")
            return self._complete(g, self._from_base(g, tag))
        if tag.kind == BaseKind.W5:
            return _Rejected(None)
        cuts = two_cuts(g)
        if not cuts:
            logger.debug(f"[depth {depth}] 3-connected support {tag.name} is not a base")
            return _Rejected(None)
        u, v = cuts[0]
        sides = components(g, (u, v))
        if len(sides) != 2:
            raise InvariantViolation(f"2-cut {{{u}, {v}}} leaves {len(sides)} components")
        paths = [path_vertices(g, set(side) | {u, v}, u, v) for side in sides]
        for i, path in enumerate(paths):
            if path is not None and (len(path) - 1) % 2 == 1:
                logger.debug(f"[depth {depth}] cut {{{u}, {v}}}: odd path of length {len(path) - 1}")
                return self._through_marked_component(g, (u, v), 1 - i, path, depth)
        for i, path in enumerate(paths):
            if path is None:
                continue
            if g.has_edge(u, v):
                logger.debug(f"[depth {depth}] cut {{{u}, {v}}}: even path beside an edge")
                return self._quasi_diamond(g)
            logger.debug(f"[depth {depth}] cut {{{u}, {v}}}: even path of length {len(path) - 1}")
            return self._through_contraction(g, (u, v), sides[i], path, depth)
        logger.debug(f"[depth {depth}] cut {{{u}, {v}}}: neither side is a path")
        return _Rejected(self._parity_witness(g, (u, v), sides))

    def _from_base(self, g: Multigraph, tag: BaseTag) -> _Certified:
        r = base_graph(tag)
        phi = support_isomorphism(r, g)
        if phi is None:
            raise InvariantViolation(f"{tag.name} does not match the support of {g!r}")
        return _Certified(tag, [], r, phi)

    def _complete(self, g: Multigraph, cert: _Certified) -> _Outcome:
        """Raise class multiplicities of the replayed graph to those of g."""
        back = _invert(cert.phi)
        r = cert.graph
        steps = list(cert.steps)
        for cls in g.parallel_classes():
            a, b = cls.endpoints
            ids = r.edges_between(back[a], back[b])
            if not ids or len(ids) > cls.multiplicity:
                raise InvariantViolation(f"class {cls.endpoints} has {len(ids)} edges in the replay, {cls.multiplicity} in the graph")
            if len(ids) == cls.multiplicity:
                continue
            if not is_admissible_edge(g, cls.representative):
                logger.debug(f"Parallel class {cls.endpoints} is not admissible")
                return _Rejected(cycle_from_vertices(g, [a, b]))
            steps.append(MultiEdgeReplace(edge=ids[0], multiplicity=cls.multiplicity))
            r = apply_multiedge_replace(r, ids[0], cls.multiplicity, validate=False)
        check_correspondence(r, g, cert.phi)
        return _Certified(cert.base, steps, r, cert.phi, cert.needs_oracle)

    def _through_marked_component(
        self, g: Multigraph, cut: Tuple[int, int], keep: int, path: List[int], depth: int
    ) -> _Outcome:
        u, v = cut
        piece = marked_k_components_with_mapping(g, cut)[keep]
        result = self._certify(piece.graph, depth + 1)
        if isinstance(result, _Rejected):
            if result.witness is None:
                return result
            return _Rejected(_lift_through_marker(result.witness, piece, g, path))

        origin = piece.vertex_origin()
        back = _invert(result.phi)
        marker_id = result.graph.edges_between(back[piece.vertex_map[u]], back[piece.vertex_map[v]])[0]
        marker = result.graph.edge(marker_id)
        path_len = len(path) - 1
        r = apply_even_subdivision(result.graph, marker_id, path_len)
        phi = {rv: origin[pv] for rv, pv in result.phi.items()}
        first = result.graph.vertex_count
        for offset, gv in enumerate(_oriented(path, phi[marker.u])[1:-1]):
            phi[first + offset] = gv
        step = EvenSubdivision(edge=marker_id, path_len=path_len)
        return self._complete(g, _Certified(result.base, result.steps + [step], r, phi, result.needs_oracle))

    def _quasi_diamond(self, g: Multigraph) -> _Outcome:
        if not is_quasi_diamond(g):
            return _Rejected(None)
        r = diamond()
        steps: List[ConstructionStep] = []
        if g.vertex_count > 4:
            edge_id = min(e.id for e in r.edges if r.degree(e.u) == 2 or r.degree(e.v) == 2)
            steps.append(EvenSubdivision(edge=edge_id, path_len=g.vertex_count - 3))
            r = apply_even_subdivision(r, edge_id, g.vertex_count - 3)
        phi = support_isomorphism(r, g)
        if phi is None:
            raise InvariantViolation(f"quasi-diamond replay does not match {g!r}")
        return self._complete(g, _Certified(BaseTag.of(BaseKind.DIAMOND), steps, r, phi))

    def _through_contraction(
        self, g: Multigraph, cut: Tuple[int, int], side: FrozenSet[int], path: List[int], depth: int
    ) -> _Outcome:
        u, v = cut
        derived = contract_with_mapping(g, set(side) | {u, v})
        result = self._certify(derived.graph, depth + 1)
        if isinstance(result, _Rejected):
            if result.witness is None:
                return result
            return _Rejected(_lift_through_contraction(result.witness, derived, g, cut, path))

        origin = derived.vertex_origin()
        back = _invert(result.phi)
        merged = back[derived.vertex_map[u]]
        contracted = result.graph
        side_a: List[int] = []
        side_b: List[int] = []
        for w in contracted.neighbours(merged):
            ids = contracted.edges_between(merged, w)
            from_u = g.multiplicity(u, origin[result.phi[w]])
            side_a.extend(ids[:from_u])
            side_b.extend(ids[from_u:])
        step = OddLExpansion(vertex=merged, side_a=sorted(side_a), side_b=sorted(side_b), path_len=len(path) - 1)
        r = apply_odd_expansion(contracted, step)
        phi = {rv: origin[hv] for rv, hv in result.phi.items() if rv != merged}
        phi[merged] = u
        first = contracted.vertex_count
        for offset, gv in enumerate(path[1:]):
            phi[first + offset] = gv
        on_path = set(path)
        both_branch = all(len(set(g.neighbours(t)) - on_path) >= 2 for t in cut)
        if both_branch:
            logger.debug(f"[depth {depth}] both halves of the expansion keep two neighbours")
        return self._complete(g, _Certified(result.base, result.steps + [step], r, phi, result.needs_oracle or both_branch))

    def _parity_witness(
        self, g: Multigraph, cut: Tuple[int, int], sides: List[FrozenSet[int]]
    ) -> Optional[CycleSpec]:
        """
        Join two cut-to-cut paths, one through each side, whose lengths have
        the parity of their side's order; each side then keeps an odd number
        of uncovered vertices, so the cycle is not nice.
        """
        u, v = cut
        support = g.to_networkx()
        remaining = self.claim_path_cap
        halves = []
        for side in sides:
            found = None
            for p in nx.all_simple_paths(support.subgraph(set(side) | {u, v}), u, v):
                remaining -= 1
                if remaining < 0:
                    logger.debug(f"Parity path search hit its cap of {self.claim_path_cap}")
                    return None
                if len(p) >= 3 and (len(p) - 1) % 2 == len(side) % 2:
                    found = p
                    break
            if found is None:
                return None
            halves.append(found)
        first, second = halves
        return cycle_from_vertices(g, first + second[-2:0:-1])


def recognize(
    g: Multigraph, cycle_cap: Optional[int] = None, claim_path_cap: Optional[int] = None
) -> Verdict:
    """
    Decide whether g is cycle-nice.

    Args:
        g: Input multigraph
        cycle_cap: Even-cycle limit for oracle fallbacks (defaults to settings)
        claim_path_cap: Path limit for the parity witness search (defaults to settings)

    Returns:
        Accept with a certificate, AcceptOracle for W5 supports, Reject with a
        witness or NotMatchable reason, or OutOfScope

    Raises:
        CapExceeded: If an oracle fallback meets more even cycles than the cap
        InvariantViolation: If the structural result contradicts itself or the oracle
    """
    if not is_nonseparable(g):
        return Verdict.out_of_scope(VerdictReason.NOT_2_CONNECTED)
    if not is_claw_free(g):
        return Verdict.out_of_scope(VerdictReason.NOT_CLAW_FREE)
    if not is_planar(g):
        return Verdict.out_of_scope(VerdictReason.NOT_PLANAR)
    if not has_perfect_matching(g):
        return Verdict.not_matchable()

    if g.vertex_count > 2 and identify_base(g).kind == BaseKind.W5:
        oracle = cycle_nice_oracle(g, cycle_cap)
        if oracle.kind == "Witness":
            return Verdict.reject(oracle.witness)
        return Verdict.accept_oracle(W5_NOTE)

    outcome = StructuralRecognizer(claim_path_cap).certify(g)
    if isinstance(outcome, _Certified):
        seq = ConstructionSequence(base=outcome.base, steps=outcome.steps)
        try:
            replayed = replay(seq)
        except ReplayError as e:
            raise InvariantViolation(f"emitted certificate does not replay: {e.detail}") from e
        if replayed != outcome.graph:
            raise InvariantViolation("emitted certificate replays to a different graph")
        check_correspondence(replayed, g, outcome.phi)
        logger.debug(f"Certificate: {seq.base.name} with {len(seq.steps)} steps")
        if outcome.needs_oracle:
            oracle = cycle_nice_oracle(g, cycle_cap)
            if oracle.kind == "Witness":
                logger.info("Certificate expansion not confirmed by the oracle")
                return Verdict.reject(oracle.witness)
        return Verdict.accept(seq)

    if outcome.witness is not None and is_witness(g, outcome.witness):
        return Verdict.reject(outcome.witness)
    logger.warning("Structural witness unavailable; falling back to the cycle oracle")
    oracle = cycle_nice_oracle(g, cycle_cap)
    if oracle.kind != "Witness":
        raise InvariantViolation(f"structural rejection but the oracle says {oracle.kind}")
    return Verdict.reject(oracle.witness)
