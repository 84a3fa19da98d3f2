"""
Graph builders, brute-force reference checks and hypothesis strategies shared by the tests.
"""
import random
from itertools import combinations, permutations
from typing import FrozenSet, Iterable, List, Optional, Set, Tuple

from hypothesis import strategies as st
from hypothesis.strategies import composite

from cyclenice.graph.multigraph import Multigraph, is_k_connected


def graph_from_edges(n: int, pairs: Iterable[Tuple[int, int]]) -> Multigraph:
    return Multigraph(n, list(pairs))


def chorded_c6() -> Multigraph:
    """6-cycle with chords 0-2 and 3-5; the 4-cycle 0-2-3-5 is not nice."""
    return Multigraph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 2), (3, 5)])


def quasi_diamond() -> Multigraph:
    """Diamond with edge 0-1 subdivided by 0-4-5-1."""
    return Multigraph(6, [(0, 2), (1, 2), (1, 3), (2, 3), (0, 4), (4, 5), (5, 1)])


def cycle_with_chord(n: int, distance: int) -> Multigraph:
    """n-cycle plus the chord joining vertex 0 to vertex ``distance``."""
    return Multigraph(n, [(i, (i + 1) % n) for i in range(n)] + [(0, distance)])


def claw() -> Multigraph:
    return Multigraph(4, [(0, 1), (0, 2), (0, 3)])


def relabel(g: Multigraph, rng: random.Random) -> Multigraph:
    order = list(g.vertices)
    rng.shuffle(order)
    return Multigraph(g.vertex_count, [(order[e.u], order[e.v]) for e in g.edges])


def random_simple_graph(rng: random.Random, n: int, p: float) -> Multigraph:
    pairs = [(a, b) for a, b in combinations(range(n), 2) if rng.random() < p]
    return Multigraph(n, pairs)


def random_two_connected(rng: random.Random, min_n: int, max_n: int, p: float = 0.5, tries: int = 200) -> Multigraph:
    for _ in range(tries):
        n = rng.randint(min_n, max_n)
        g = random_simple_graph(rng, n, p)
        if is_k_connected(g, 2):
            return g
    return Multigraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


def with_random_multiplicities(rng: random.Random, g: Multigraph, max_mult: int = 2, p: float = 0.3) -> Multigraph:
    pairs = []
    for e in g.edges:
        copies = rng.randint(2, max_mult) if rng.random() < p else 1
        pairs.extend([(e.u, e.v)] * copies)
    return Multigraph(g.vertex_count, pairs)


# -- brute-force references -------------------------------------------------

def _adjacency(g: Multigraph) -> List[Set[int]]:
    adjacency: List[Set[int]] = [set() for _ in g.vertices]
    for e in g.edges:
        adjacency[e.u].add(e.v)
        adjacency[e.v].add(e.u)
    return adjacency


def brute_max_matching_size(g: Multigraph) -> int:
    adjacency = _adjacency(g)

    def best(remaining: FrozenSet[int]) -> int:
        if not remaining:
            return 0
        v = min(remaining)
        rest = remaining - {v}
        result = best(rest)
        for w in adjacency[v] & rest:
            result = max(result, 1 + best(rest - {w}))
        return result

    return best(frozenset(g.vertices))


def brute_perfect_matchings(g: Multigraph) -> List[FrozenSet[int]]:
    """Every perfect matching as a set of edge ids (parallel edges counted separately)."""
    found: List[FrozenSet[int]] = []

    def extend(remaining: FrozenSet[int], chosen: Tuple[int, ...]) -> None:
        if not remaining:
            found.append(frozenset(chosen))
            return
        v = min(remaining)
        for edge_id in g.incident_edges(v):
            w = g.edge(edge_id).other(v)
            if w in remaining and w != v:
                extend(remaining - {v, w}, chosen + (edge_id,))

    extend(frozenset(g.vertices), ())
    return found


def brute_has_perfect_matching(g: Multigraph, removed: Iterable[int] = ()) -> bool:
    adjacency = _adjacency(g)

    def match(remaining: FrozenSet[int]) -> bool:
        if not remaining:
            return True
        v = min(remaining)
        return any(match(remaining - {v, w}) for w in adjacency[v] & remaining)

    return match(frozenset(g.vertices) - frozenset(removed))


def brute_has_claw(g: Multigraph) -> bool:
    adjacency = _adjacency(g)
    for v in g.vertices:
        for a, b, c in combinations(sorted(adjacency[v]), 3):
            if b not in adjacency[a] and c not in adjacency[a] and c not in adjacency[b]:
                return True
    return False


def _has_spanning_cycle(adjacency: List[Set[int]], vertices: Tuple[int, ...]) -> bool:
    first, rest = vertices[0], vertices[1:]
    for order in permutations(rest):
        if order and order[0] > order[-1]:
            continue
        walk = (first,) + order + (first,)
        if all(b in adjacency[a] for a, b in zip(walk, walk[1:])):
            return True
    return False


def brute_is_cycle_nice(g: Multigraph) -> Optional[bool]:
    """None when g has no perfect matching; otherwise test every even vertex set carrying a cycle."""
    if not brute_has_perfect_matching(g):
        return None
    adjacency = _adjacency(g)
    for cls in g.parallel_classes():
        if cls.multiplicity >= 2 and not brute_has_perfect_matching(g, cls.endpoints):
            return False
    for size in range(4, g.vertex_count + 1, 2):
        for subset in combinations(g.vertices, size):
            if _has_spanning_cycle(adjacency, subset) and not brute_has_perfect_matching(g, subset):
                return False
    return True


# -- hypothesis strategies --------------------------------------------------

@composite
def simple_graphs(draw, min_nodes: int = 1, max_nodes: int = 8) -> Multigraph:
    """Random simple graphs on 0..n-1."""
    n = draw(st.integers(min_value=min_nodes, max_value=max_nodes))
    pairs = [(a, b) for a, b in combinations(range(n), 2) if draw(st.booleans())]
    return Multigraph(n, pairs)


@composite
def multigraphs(draw, min_nodes: int = 2, max_nodes: int = 7, max_mult: int = 3) -> Multigraph:
    """Random loopless multigraphs with class multiplicities up to max_mult."""
    n = draw(st.integers(min_value=min_nodes, max_value=max_nodes))
    pairs = []
    for a, b in combinations(range(n), 2):
        pairs.extend([(a, b)] * draw(st.integers(min_value=0, max_value=max_mult)))
    order = draw(st.permutations(range(len(pairs)))) if pairs else []
    return Multigraph(n, [pairs[i] for i in order])


def parse_payload_edges(text: str) -> Multigraph:
    """Edge-list text from the example payloads, parsed without the file layer."""
    lines = [line.split() for line in text.strip().splitlines()]
    n, _ = (int(x) for x in lines[0])
    return Multigraph(n, [(int(u), int(v)) for u, v in lines[1:]])
