"""
Tests for small-graph enumeration and the atlas of 3-connected claw-free
planar cycle-nice graphs.
"""
import pytest

from cyclenice.construction.atlas import atlas, enumerate_graphs, render_report
from cyclenice.errors import PreconditionFailed


class TestEnumeration:

    @pytest.mark.parametrize("n, count", [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34), (6, 156)])
    def test_counts_up_to_isomorphism(self, n, count):
        assert len(enumerate_graphs(n)) == count

    def test_ordered_by_edge_count(self):
        sizes = [graph.number_of_edges() for graph in enumerate_graphs(5)]
        assert sizes == sorted(sizes)


class TestAtlas:

    def test_up_to_five(self):
        report = atlas(5)
        assert [entry.base for entry in report.cycle_nice] == ["K4"]
        assert [stats.connected for stats in report.orders] == [1, 1, 2, 6, 21]

    def test_up_to_six(self):
        report = atlas(6)
        assert sorted(entry.base for entry in report.cycle_nice) == ["C6bar", "K4", "W5"]
        assert report.orders[-1].enumerated == 156
        assert report.orders[-1].connected == 112

    @pytest.mark.slow
    def test_seven_adds_nothing(self):
        assert sorted(entry.base for entry in atlas(7).cycle_nice) == ["C6bar", "K4", "W5"]

    @pytest.mark.slow
    def test_eight_adds_nothing(self):
        assert sorted(entry.base for entry in atlas(8).cycle_nice) == ["C6bar", "K4", "W5"]

    @pytest.mark.parametrize("max_n", [3, 9])
    def test_range(self, max_n):
        with pytest.raises(PreconditionFailed):
            atlas(max_n)

    def test_report_text(self):
        text = render_report(atlas(4))
        assert text.startswith("Atlas of simple graphs with at most 4 vertices")
        assert "  n=4 C~ K4" in text
