"""
Exhaustive small-graph atlas of 3-connected claw-free planar cycle-nice graphs.
"""
import logging
from itertools import combinations
from typing import Dict, List, Optional

import networkx as nx

from cyclenice.errors import PreconditionFailed
from cyclenice.graph.cycles import cycle_nice_oracle
from cyclenice.graph.formats import format_graph6
from cyclenice.graph.multigraph import Multigraph, is_connected, is_k_connected
from cyclenice.graph.predicates import identify_base, is_claw_free, is_planar
from cyclenice.schemas import AtlasEntry, AtlasOrderStats, AtlasReport

logger = logging.getLogger(__name__)

MIN_ORDER = 4
MAX_ORDER = 8


def _add_if_new(buckets: Dict[str, List[nx.Graph]], graph: nx.Graph) -> bool:
    key = nx.weisfeiler_lehman_graph_hash(graph)
    bucket = buckets.setdefault(key, [])
    if any(nx.is_isomorphic(graph, seen) for seen in bucket):
        return False
    bucket.append(graph)
    return True


def enumerate_graphs(n: int) -> List[nx.Graph]:
    """
    All simple graphs on n vertices up to isomorphism.

    Graphs are grown one edge at a time from the empty graph; each level is
    deduplicated with Weisfeiler-Lehman hash buckets and an exact isomorphism
    test inside a bucket.

    Returns:
        Graphs on nodes 0..n-1 ordered by edge count, then discovery order
    """
    empty = nx.empty_graph(n)
    result = [empty]
    level = [empty]
    pairs = list(combinations(range(n), 2))
    while level:
        buckets: Dict[str, List[nx.Graph]] = {}
        following: List[nx.Graph] = []
        for graph in level:
            for a, b in pairs:
                if graph.has_edge(a, b):
                    continue
                grown = graph.copy()
                grown.add_edge(a, b)
                if _add_if_new(buckets, grown):
                    following.append(grown)
        result.extend(following)
        level = following
    logger.debug(f"{len(result)} graphs on {n} vertices")
    return result


def atlas(max_n: int = 7, cycle_cap: Optional[int] = None) -> AtlasReport:
    """
    Classify every simple graph with at most ``max_n`` vertices.

    Args:
        max_n: Largest order, between 4 and 8
        cycle_cap: Even-cycle limit for the oracle (defaults to settings)

    Returns:
        Per-order counts and the 3-connected claw-free planar cycle-nice graphs

    Raises:
        PreconditionFailed: If max_n is out of range
        CapExceeded: If the oracle meets too many even cycles
    """
    if not MIN_ORDER <= max_n <= MAX_ORDER:
        raise PreconditionFailed(f"max_n must lie in {MIN_ORDER}..{MAX_ORDER}, got {max_n}")
    if max_n == MAX_ORDER:
        logger.warning("Atlas over 8 vertices enumerates 12346 graphs and runs for a long time")
    orders: List[AtlasOrderStats] = []
    entries: List[AtlasEntry] = []
    for n in range(1, max_n + 1):
        graphs = enumerate_graphs(n)
        connected = in_scope = nice = 0
        for graph in graphs:
            g = Multigraph.from_networkx(graph)
            if not is_connected(g):
                continue
            connected += 1
            if not (is_k_connected(g, 3) and is_claw_free(g) and is_planar(g)):
                continue
            in_scope += 1
            if cycle_nice_oracle(g, cycle_cap).kind != "CycleNice":
                continue
            nice += 1
            entries.append(AtlasEntry(order=n, graph6=format_graph6(g).strip(), base=identify_base(g).name))
        orders.append(AtlasOrderStats(order=n, enumerated=len(graphs), connected=connected, in_scope=in_scope, cycle_nice=nice))
        logger.info(f"Order {n}: {len(graphs)} graphs, {in_scope} in scope, {nice} cycle-nice")
    return AtlasReport(max_n=max_n, orders=orders, cycle_nice=entries)


def render_report(report: AtlasReport) -> str:
    lines = [f"Atlas of simple graphs with at most {report.max_n} vertices", ""]
    lines.append(f"{'order':>5} {'graphs':>8} {'connected':>10} {'in scope':>9} {'cycle-nice':>11}")
    for stats in report.orders:
        lines.append(
            f"{stats.order:>5} {stats.enumerated:>8} {stats.connected:>10} {stats.in_scope:>9} {stats.cycle_nice:>11}"
        )
    lines.append("")
    lines.append("3-connected claw-free planar cycle-nice graphs:")
    for entry in report.cycle_nice:
        lines.append(f"  n={entry.order} {entry.graph6} {entry.base}")
    return "\n".join(lines) + "\n"
