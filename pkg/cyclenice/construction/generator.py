"""
Seeded random construction of cycle-nice graphs with their certificates.

All randomness comes from ``random.Random(seed)`` (Mersenne Twister) through
``random()`` only, so a seed reproduces the same corpus on every platform.
"""
import logging
import random
from pathlib import Path
from typing import List, Optional, Sequence, Set, Tuple, TypeVar

from cyclenice.config import get_settings
from cyclenice.construction.operations import apply_step, dump_sequence
from cyclenice.errors import GraphFormatError, GraphStructureError, StepError, Stuck
from cyclenice.graph.families import base_graph
from cyclenice.graph.formats import GRAPH6, EDGES, write_graph
from cyclenice.graph.multigraph import Multigraph
from cyclenice.graph.predicates import is_claw_free, is_planar
from cyclenice.schemas import (
    BaseKind,
    BaseTag,
    ConstructionSequence,
    ConstructionStep,
    EvenSubdivision,
    GenConfig,
    MultiEdgeReplace,
    OddLExpansion,
)

logger = logging.getLogger(__name__)

T = TypeVar("T")

RANDOM_BASES = (
    BaseTag.even_cycle(2),
    BaseTag.even_cycle(4),
    BaseTag.even_cycle(6),
    BaseTag.even_cycle(8),
    BaseTag.of(BaseKind.DIAMOND),
    BaseTag.of(BaseKind.K4),
    BaseTag.of(BaseKind.C6BAR),
)


def _choice(rng: random.Random, items: Sequence[T]) -> T:
    return items[min(int(rng.random() * len(items)), len(items) - 1)]


def _weighted_index(rng: random.Random, weights: Sequence[float]) -> int:
    target = rng.random() * sum(weights)
    for index, weight in enumerate(weights):
        if target < weight:
            return index
        target -= weight
    return max(i for i, w in enumerate(weights) if w > 0)


def side_neighbours(g: Multigraph, vertex: int, side: Sequence[int]) -> Set[int]:
    return {g.edge(i).other(vertex) for i in side}


def _propose(rng: random.Random, g: Multigraph, cfg: GenConfig) -> Optional[ConstructionStep]:
    kind = _weighted_index(rng, cfg.op_weights)
    if kind == 0:
        lengths = list(range(3, cfg.max_path_len + 1, 2))
        return EvenSubdivision(edge=_choice(rng, g.edges).id, path_len=_choice(rng, lengths))
    if kind == 1:
        vertex = _choice(rng, list(g.vertices))
        incident = g.incident_edges(vertex)
        if len(incident) < 2:
            return None
        while True:
            side_a = [i for i in incident if rng.random() < 0.5]
            if 0 < len(side_a) < len(incident):
                break
        side_b = [i for i in incident if i not in side_a]
        if not any(len(side_neighbours(g, vertex, side)) == 1 for side in (side_a, side_b)):
            return None
        lengths = list(range(2, cfg.max_path_len + 1, 2))
        return OddLExpansion(vertex=vertex, side_a=side_a, side_b=side_b, path_len=_choice(rng, lengths))
    e = _choice(rng, g.edges)
    return MultiEdgeReplace(edge=e.id, multiplicity=g.multiplicity(e.u, e.v) + 1)


def generate(cfg: GenConfig, max_proposals: Optional[int] = None) -> Tuple[Multigraph, ConstructionSequence]:
    """
    Build a random construction sequence and the graph it replays to.

    Each step is drawn by weight and uniform parameters; proposals whose
    preconditions fail (or, when required, whose result has a claw or is not
    planar) are discarded and redrawn.

    Args:
        cfg: Generation parameters
        max_proposals: Proposals per step before giving up (defaults to settings)

    Returns:
        (graph, sequence) with replay(sequence) == graph

    Raises:
        Stuck: If no acceptable step is found within max_proposals
    """
    max_proposals = max_proposals if max_proposals is not None else get_settings().max_proposals
    rng = random.Random(cfg.seed)
    base = cfg.base if isinstance(cfg.base, BaseTag) else _choice(rng, RANDOM_BASES)
    g = base_graph(base)
    steps: List[ConstructionStep] = []
    for index in range(cfg.n_ops):
        for _ in range(max_proposals):
            step = _propose(rng, g, cfg)
            if step is None:
                continue
            try:
                candidate = apply_step(g, step)
            except (StepError, GraphStructureError) as e:
                logger.debug(f"Proposal {step.kind} rejected: {e.detail}")
                continue
            if cfg.require_claw_free_planar and not (is_claw_free(candidate) and is_planar(candidate)):
                continue
            g = candidate
            steps.append(step)
            break
        else:
            raise Stuck(max_proposals, index)
    logger.debug(f"Generated {g!r} from {base.name} with seed {cfg.seed}")
    return g, ConstructionSequence(base=base, steps=steps)


def generate_corpus(cfg: GenConfig, count: int, out_dir: Path, max_proposals: Optional[int] = None) -> List[Path]:
    """
    Write ``count`` generated instances to ``out_dir``.

    Instance i uses seed ``cfg.seed + i`` and is written as
    ``<seed>-<i>.edges``, ``<seed>-<i>.cert.json`` and, for simple graphs,
    ``<seed>-<i>.g6``.

    Returns:
        Paths of all written files
    """
    out_dir = Path(out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise GraphFormatError(f"cannot create {out_dir}: {e}") from e
    written: List[Path] = []
    for index in range(count):
        instance = cfg.model_copy(update={"seed": (cfg.seed + index) % 2**64})
        g, seq = generate(instance, max_proposals)
        stem = out_dir / f"{cfg.seed}-{index}"
        write_graph(g, stem.with_suffix(".edges"), EDGES)
        written.append(stem.with_suffix(".edges"))
        if g.is_simple:
            write_graph(g, stem.with_suffix(".g6"), GRAPH6)
            written.append(stem.with_suffix(".g6"))
        cert = out_dir / f"{stem.name}.cert.json"
        try:
            cert.write_text(dump_sequence(seq) + "\n", encoding="utf-8")
        except OSError as e:
            raise GraphFormatError(f"cannot write {cert}: {e}") from e
        written.append(cert)
    logger.info(f"Wrote {count} instances to {out_dir}")
    return written
