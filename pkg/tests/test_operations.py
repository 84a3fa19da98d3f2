"""
Tests for the construction operations, their inverses and certificate replay.
"""
import json
import random
from itertools import combinations

import pytest

import certificate_example
from cyclenice.construction.generator import generate, side_neighbours
from cyclenice.construction.operations import (
    apply_even_subdivision,
    apply_multiedge_replace,
    apply_odd_expansion,
    apply_step,
    collapse_class,
    dump_sequence,
    load_sequence,
    merge_path,
    replay,
    suppress_path,
)
from cyclenice.errors import (
    BadMultiplicity,
    BadParity,
    BadPartition,
    EmptySide,
    NoSuchEdge,
    NotAdmissible,
    PreconditionFailed,
    ReplayError,
)
from cyclenice.graph import families
from cyclenice.graph.cycles import cycle_nice_oracle, is_nice_cycle
from cyclenice.graph.multigraph import Multigraph, are_isomorphic, is_nonseparable
from cyclenice.graph.predicates import find_claw, is_claw_free
from cyclenice.schemas import (
    BaseTag,
    ConstructionSequence,
    EvenSubdivision,
    GenConfig,
    MultiEdgeReplace,
    OddAExpansion,
    OddLExpansion,
)
from tests.graphs import (
    chorded_c6,
    parse_payload_edges,
    quasi_diamond,
    random_simple_graph,
    random_two_connected,
    with_random_multiplicities,
)


class TestEvenSubdivision:

    def test_numbering(self, k4):
        g = apply_even_subdivision(k4, 0, 3)
        assert g.vertex_count == 6
        assert [e.key for e in g.edges] == [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (4, 5), (1, 5)]

    def test_longer_path(self):
        g = apply_even_subdivision(families.cycle(4), 1, 5)
        assert are_isomorphic(g, families.cycle(8))

    def test_even_length_rejected(self, k4):
        with pytest.raises(BadParity):
            apply_even_subdivision(k4, 0, 4)
        with pytest.raises(BadParity):
            apply_even_subdivision(k4, 0, 1)

    def test_missing_edge(self, k4):
        with pytest.raises(NoSuchEdge):
            apply_even_subdivision(k4, 9, 3)

    def test_suppress_undoes_it(self, k4):
        g = apply_even_subdivision(k4, 0, 3)
        assert are_isomorphic(suppress_path(g, [0, 4, 5, 1]), k4)

    def test_suppress_needs_2_vertices(self, k4):
        with pytest.raises(PreconditionFailed):
            suppress_path(k4, [0, 1, 2, 3])
        with pytest.raises(BadParity):
            suppress_path(k4, [0, 1, 2])


class TestOddExpansion:

    def test_a_expansion_of_two_cycle_is_diamond(self, two_cycle, diamond):
        step = OddAExpansion(vertex=0, side_a=[0], side_b=[1], path_len=2, bridge_mult=1)
        g = apply_odd_expansion(two_cycle, step)
        assert [e.key for e in g.edges] == [(0, 1), (1, 3), (0, 2), (2, 3), (0, 3)]
        assert are_isomorphic(g, diamond)

    def test_l_expansion_lengthens_a_cycle(self):
        step = OddLExpansion(vertex=0, side_a=[0], side_b=[3], path_len=2)
        g = apply_odd_expansion(families.cycle(4), step)
        assert are_isomorphic(g, families.cycle(6))
        assert are_isomorphic(merge_path(g, [0, 4, 5]), families.cycle(4))

    def test_bridge_multiplicity(self, two_cycle):
        step = OddAExpansion(vertex=0, side_a=[0], side_b=[1], path_len=2, bridge_mult=3)
        g = apply_odd_expansion(two_cycle, step)
        assert g.multiplicity(0, 3) == 3
        assert are_isomorphic(merge_path(g, [0, 2, 3]), two_cycle)

    def test_existing_edge_ids_survive(self, k4):
        step = OddLExpansion(vertex=1, side_a=[0, 3], side_b=[4], path_len=2)
        g = apply_odd_expansion(k4, step)
        assert g.edge(4).key == (3, 5)
        assert g.edge(0).key == (0, 1)
        assert g.vertex_count == 6

    def test_partition_errors(self, k4):
        with pytest.raises(BadPartition):
            apply_odd_expansion(k4, OddLExpansion(vertex=0, side_a=[0], side_b=[1], path_len=2))
        with pytest.raises(BadPartition):
            apply_odd_expansion(k4, OddLExpansion(vertex=0, side_a=[0, 1], side_b=[1, 2], path_len=2))
        with pytest.raises(BadPartition):
            apply_odd_expansion(k4, OddLExpansion(vertex=0, side_a=[0, 1], side_b=[5], path_len=2))

    def test_empty_side(self, k4):
        step = OddLExpansion.model_construct(vertex=0, side_a=[], side_b=[0, 1, 2], path_len=2)
        with pytest.raises(EmptySide):
            apply_odd_expansion(k4, step)

    def test_odd_path(self, k4):
        step = OddLExpansion.model_construct(vertex=0, side_a=[0], side_b=[1, 2], path_len=3)
        with pytest.raises(BadParity):
            apply_odd_expansion(k4, step)

    def test_merge_rejects_odd_paths(self):
        with pytest.raises(BadParity):
            merge_path(families.cycle(6), [0, 1, 2, 3])


class TestMultiEdgeReplace:

    def test_prism_rung(self, c6bar):
        g = apply_multiedge_replace(c6bar, 5, 2)
        assert g.multiplicity(2, 5) == 2
        assert g.edge(9).key == (2, 5)
        assert collapse_class(g, 9) == c6bar

    def test_absolute_target(self, c6bar):
        once = apply_multiedge_replace(c6bar, 5, 2)
        assert apply_multiedge_replace(once, 9, 2) is once
        assert apply_multiedge_replace(once, 5, 4).multiplicity(2, 5) == 4

    def test_bad_multiplicity(self, c6bar):
        with pytest.raises(BadMultiplicity):
            apply_multiedge_replace(c6bar, 0, 1)
        doubled = apply_multiedge_replace(c6bar, 0, 3)
        with pytest.raises(BadMultiplicity):
            apply_multiedge_replace(doubled, 0, 2)

    def test_inadmissible_chord(self, diamond):
        with pytest.raises(NotAdmissible):
            apply_multiedge_replace(diamond, 2, 2)
        raw = apply_multiedge_replace(diamond, 2, 2, validate=False)
        assert raw.multiplicity(1, 2) == 2

    def test_apply_step_dispatch(self, c6bar):
        assert apply_step(c6bar, MultiEdgeReplace(edge=5, multiplicity=2)).edge_count == 10
        assert apply_step(c6bar, EvenSubdivision(edge=0, path_len=3)).vertex_count == 8


class TestReplay:

    def test_quasi_diamond_certificate(self):
        seq = ConstructionSequence.model_validate(certificate_example.quasi_diamond_certificate)
        assert are_isomorphic(replay(seq), quasi_diamond())

    def test_c4_certificate(self):
        seq = ConstructionSequence.model_validate(certificate_example.c4_certificate)
        assert replay(seq) == parse_payload_edges(certificate_example.c4_edges)

    def test_prism_doubled_rung(self, c6bar):
        seq = ConstructionSequence.model_validate(certificate_example.prism_doubled_rung_certificate)
        g = replay(seq)
        assert g.edge_count == 10
        assert g.multiplicity(2, 5) == 2

    def test_diamond_from_two_cycle(self, diamond):
        seq = ConstructionSequence.model_validate(certificate_example.diamond_from_two_cycle_certificate)
        assert are_isomorphic(replay(seq), diamond)

    def test_failure_carries_step_index(self):
        seq = ConstructionSequence(
            base=BaseTag.even_cycle(4),
            steps=[EvenSubdivision(edge=0, path_len=3), EvenSubdivision(edge=40, path_len=3)],
        )
        with pytest.raises(ReplayError) as info:
            replay(seq)
        assert info.value.step_index == 1
        assert isinstance(info.value.cause, NoSuchEdge)

    def test_inadmissible_step_fails_replay(self):
        seq = ConstructionSequence.model_validate(
            {"base": {"kind": "Diamond"}, "steps": [{"kind": "MultiEdgeReplace", "edge": 2, "multiplicity": 2}]}
        )
        with pytest.raises(ReplayError) as info:
            replay(seq)
        assert isinstance(info.value.cause, NotAdmissible)

    def test_json_survives_dump_and_load(self):
        seq = ConstructionSequence.model_validate(certificate_example.diamond_from_two_cycle_certificate)
        text = dump_sequence(seq)
        assert json.loads(text) == certificate_example.diamond_from_two_cycle_certificate
        assert load_sequence(text) == seq


def _random_preserving_step(rng: random.Random, g: Multigraph):
    """A step that keeps a cycle-nice graph cycle-nice."""
    kind = rng.randrange(3)
    if kind == 0:
        return EvenSubdivision(edge=rng.randrange(g.edge_count), path_len=rng.choice([3, 5]))
    if kind == 1:
        v = rng.randrange(g.vertex_count)
        incident = list(g.incident_edges(v))
        for _ in range(20):
            side_a = [i for i in incident if rng.random() < 0.5]
            side_b = [i for i in incident if i not in side_a]
            if side_a and side_b and (
                len(side_neighbours(g, v, side_a)) == 1 or len(side_neighbours(g, v, side_b)) == 1
            ):
                return OddLExpansion(vertex=v, side_a=side_a, side_b=side_b, path_len=rng.choice([2, 4]))
        return None
    e = g.edge(rng.randrange(g.edge_count))
    return MultiEdgeReplace(edge=e.id, multiplicity=g.multiplicity(e.u, e.v) + 1)


class TestOperationsPreserveCycleNice:

    @pytest.mark.parametrize("build", [families.k4, families.c6bar, families.diamond, lambda: families.cycle(4)])
    def test_random_steps(self, build, rng):
        for _ in range(15):
            g = build()
            for _ in range(2):
                step = _random_preserving_step(rng, g)
                if step is None:
                    continue
                try:
                    g = apply_step(g, step)
                except NotAdmissible:
                    continue
                assert is_nonseparable(g)
                assert cycle_nice_oracle(g).kind == "CycleNice"

    @pytest.mark.slow
    @pytest.mark.parametrize("seed", range(5))
    def test_long_random_chains(self, seed):
        rng = random.Random(seed)
        g = families.k4()
        for _ in range(6):
            step = _random_preserving_step(rng, g)
            if step is None:
                continue
            try:
                g = apply_step(g, step)
            except NotAdmissible:
                continue
            assert cycle_nice_oracle(g).kind == "CycleNice"


def _all_splits(g: Multigraph):
    for v in g.vertices:
        incident = list(g.incident_edges(v))
        for size in range(1, len(incident)):
            for side_a in combinations(incident, size):
                yield v, list(side_a), [i for i in incident if i not in side_a]


class TestExpansionsOfTheWheel:

    @pytest.mark.parametrize("path_len", [3, 5])
    def test_every_even_subdivision_has_a_claw(self, w5, path_len):
        for e in w5.edges:
            assert find_claw(apply_even_subdivision(w5, e.id, path_len)) is not None

    @pytest.mark.parametrize("path_len", [2, 4])
    def test_every_odd_expansion_has_a_claw(self, w5, path_len):
        count = 0
        for v, side_a, side_b in _all_splits(w5):
            for step in (
                OddLExpansion(vertex=v, side_a=side_a, side_b=side_b, path_len=path_len),
                OddAExpansion(vertex=v, side_a=side_a, side_b=side_b, path_len=path_len, bridge_mult=1),
            ):
                assert find_claw(apply_odd_expansion(w5, step)) is not None, step
                count += 1
        assert count == 2 * (30 + 5 * 6)


class TestClawFreeOutputsComeFromClawFreeInputs:

    def test_random_graphs(self, rng):
        for _ in range(40):
            g = random_two_connected(rng, 4, 7)
            outputs = [apply_even_subdivision(g, e.id, 3) for e in g.edges]
            for v, side_a, side_b in _all_splits(g):
                outputs.append(apply_odd_expansion(g, OddLExpansion(vertex=v, side_a=side_a, side_b=side_b, path_len=2)))
            if any(is_claw_free(h) for h in outputs):
                assert is_claw_free(g)


def _subdivision_trials(seed: int, count: int, max_n: int = 12):
    rng = random.Random(seed)
    done = 0
    while done < count:
        g = random_simple_graph(rng, rng.randint(2, max_n), rng.uniform(0.2, 0.4))
        if rng.random() < 0.3:
            g = with_random_multiplicities(rng, g)
        if g.edge_count == 0:
            continue
        done += 1
        yield g, g.edge(rng.randrange(g.edge_count)), rng.choice([3, 5])


class TestSubdivisionKeepsTheVerdict:

    def _check(self, g: Multigraph, e, path_len: int) -> str:
        kind = cycle_nice_oracle(g).kind
        h = apply_even_subdivision(g, e.id, path_len)
        assert cycle_nice_oracle(h).kind == kind
        first = g.vertex_count
        path = [e.u] + list(range(first, first + path_len - 1)) + [e.v]
        restored = suppress_path(h, path)
        assert are_isomorphic(restored, g)
        assert cycle_nice_oracle(restored).kind == kind
        return kind

    @pytest.mark.parametrize("g, kind", [
        (families.k4(), "CycleNice"),
        (chorded_c6(), "Witness"),
        (families.cycle(5), "NotMatchable"),
    ])
    def test_every_edge_of_named_graphs(self, g, kind):
        for e in g.edges:
            for path_len in (3, 5):
                assert self._check(g, e, path_len) == kind

    def test_seeded_trials(self):
        for g, e, path_len in _subdivision_trials(11, 40, max_n=8):
            self._check(g, e, path_len)

    @pytest.mark.slow
    def test_five_hundred_trials(self):
        kinds = [self._check(g, e, path_len) for g, e, path_len in _subdivision_trials(20240601, 500)]
        assert len(kinds) == 500
        assert {"CycleNice", "Witness", "NotMatchable"} <= set(kinds)


def _single_neighbour_expansion(rng: random.Random, g: Multigraph):
    """An odd L-expansion whose side_b reaches one neighbour only."""
    candidates = [v for v in g.vertices if len(g.neighbours(v)) >= 2]
    v = rng.choice(candidates)
    w = rng.choice(g.neighbours(v))
    towards_w = list(g.edges_between(v, w))
    side_b = rng.sample(towards_w, rng.randint(1, len(towards_w)))
    side_a = [i for i in g.incident_edges(v) if i not in side_b]
    return OddLExpansion(vertex=v, side_a=side_a, side_b=sorted(side_b), path_len=rng.choice([2, 4]))


class TestSingleNeighbourLExpansion:

    def _trials(self, count: int):
        for seed in range(count):
            rng = random.Random(seed)
            g, _ = generate(GenConfig(n_ops=rng.randint(0, 4), seed=seed, max_path_len=3))
            if not any(len(g.neighbours(v)) >= 2 for v in g.vertices):
                g = families.k4()
            assert is_nonseparable(g)
            step = _single_neighbour_expansion(rng, g)
            assert len(side_neighbours(g, step.vertex, step.side_b)) == 1
            yield apply_odd_expansion(g, step)

    def test_seeded_trials(self):
        for h in self._trials(30):
            assert cycle_nice_oracle(h).kind == "CycleNice"

    @pytest.mark.slow
    def test_five_hundred_trials(self):
        for h in self._trials(500):
            assert cycle_nice_oracle(h).kind == "CycleNice"

    def test_both_halves_with_two_neighbours_can_break_niceness(self, w5):
        side_a = [i for i in w5.incident_edges(0) if w5.edge(i).other(0) in (1, 2)]
        side_b = [i for i in w5.incident_edges(0) if w5.edge(i).other(0) in (3, 4, 5)]
        h = apply_odd_expansion(w5, OddLExpansion(vertex=0, side_a=side_a, side_b=side_b, path_len=2))
        assert cycle_nice_oracle(w5).kind == "CycleNice"
        verdict = cycle_nice_oracle(h)
        assert verdict.kind == "Witness"
        assert not is_nice_cycle(h, verdict.witness)
