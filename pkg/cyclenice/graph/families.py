"""
Named small graphs: the construction bases and the other fixed targets.
"""
import networkx as nx

from cyclenice.graph.multigraph import Multigraph
from cyclenice.schemas import BaseKind, BaseTag


def cycle(n: int) -> Multigraph:
    """Cycle v0 v1 ... v(n-1); n = 2 gives two parallel edges."""
    if n < 2:
        raise ValueError(f"a cycle needs at least 2 vertices, got {n}")
    if n == 2:
        return Multigraph(2, [(0, 1), (0, 1)])
    return Multigraph(n, [(i, (i + 1) % n) for i in range(n)])


def k2() -> Multigraph:
    return Multigraph(2, [(0, 1)])


def diamond() -> Multigraph:
    """K4 minus an edge: 3-vertices 1 and 2, 2-vertices 0 and 3."""
    return Multigraph.from_networkx(nx.diamond_graph())


def k4() -> Multigraph:
    return Multigraph.from_networkx(nx.complete_graph(4))


def c6bar() -> Multigraph:
    """Triangular prism: triangles 0-1-2 and 3-4-5, rungs i-(i+3)."""
    return Multigraph.from_networkx(nx.circular_ladder_graph(3))


def w5() -> Multigraph:
    """Wheel with hub 0 and rim 1-2-3-4-5."""
    return Multigraph.from_networkx(nx.wheel_graph(6))


def petersen() -> Multigraph:
    return Multigraph.from_networkx(nx.petersen_graph())


def base_graph(tag: BaseTag) -> Multigraph:
    """Materialize a base tag (bases of the construction family plus W5 and K2)."""
    builders = {
        BaseKind.DIAMOND: diamond,
        BaseKind.K4: k4,
        BaseKind.C6BAR: c6bar,
        BaseKind.W5: w5,
        BaseKind.K2: k2,
    }
    if tag.kind == BaseKind.EVEN_CYCLE:
        return cycle(tag.length)
    if tag.kind not in builders:
        raise ValueError(f"{tag.name} has no fixed graph")
    return builders[tag.kind]()
