from fractions import Fraction

import pytest

from dimsolve.graph import DimGraph
from dimsolve.instance import Instance, InstanceUsageError, Label
from dimsolve.models import Solution
from dimsolve.oracle import verify
from dimsolve.solve import ReconstructionError, reconstruct, solve_base

from .. import complete, cycle, path


class TestEnumeration:
    def test_three_path(self):
        solution = solve_base(Instance(path(3)))
        assert solution.edges == frozenset({(1, 2)})

    def test_respects_labels(self):
        inst = Instance(path(3))
        inst.assign(1, Label.I)
        assert solve_base(inst).edges == frozenset({(2, 3)})

    def test_four_cycle(self, c4):
        assert solve_base(Instance(c4)) is None

    def test_weighted_modes(self, c6_weighted):
        assert solve_base(Instance(c6_weighted), "min").total_weight == Fraction(-1, 2)
        assert solve_base(Instance(c6_weighted), "max").total_weight == 9


class TestPathsAndCycles:
    @pytest.mark.parametrize("n, feasible", [(6, True), (7, False), (8, False), (9, True), (12, True)])
    def test_cycles(self, n, feasible):
        graph = cycle(n)
        solution = solve_base(Instance(graph), base_case_size=0)
        assert (solution is not None) is feasible
        if feasible:
            assert verify(graph, solution)
            assert len(solution.edges) == n // 3

    def test_long_path(self):
        graph = path(7)
        solution = solve_base(Instance(graph), base_case_size=0)
        assert verify(graph, solution)

    def test_weighted_cycle_minimum(self, c6_weighted):
        solution = solve_base(Instance(c6_weighted), "min", base_case_size=0)
        assert solution.edges == frozenset({(2, 3), (5, 6)})
        assert solution.total_weight == Fraction(-1, 2)

    def test_mixed_components(self):
        # a six-cycle next to a four-vertex path
        edges = [(i, i % 6 + 1) for i in range(1, 7)] + [(7, 8), (8, 9), (9, 10)]
        graph = DimGraph.from_edges(10, edges)
        solution = solve_base(Instance(graph), base_case_size=0)
        assert (8, 9) in solution.edges
        assert verify(graph, solution)

    def test_needs_small_or_low_degree_instance(self):
        with pytest.raises(InstanceUsageError):
            solve_base(Instance(complete(4)), base_case_size=0)


class TestReconstruct:
    def test_empty_trace(self, c6_weighted):
        solution = Solution(edges=frozenset({(1, 2), (4, 5)}), total_weight=5)
        assert reconstruct([], solution, original=c6_weighted) == solution

    def test_foreign_edge(self, c6):
        with pytest.raises(ReconstructionError):
            reconstruct([], Solution(edges=frozenset({(1, 7)})), original=c6)

    def test_total_mismatch(self, c6_weighted):
        with pytest.raises(ReconstructionError):
            reconstruct([], Solution(edges=frozenset({(1, 2)}), total_weight=5), original=c6_weighted)

    def test_float_totals_compare_with_tolerance(self):
        graph = DimGraph.from_edges(2, [(1, 2)], {(1, 2): "1/3"}, exact=False)
        lifted = reconstruct([], Solution(edges=frozenset({(1, 2)}), total_weight=0.3333333333), original=graph)
        assert lifted.total_weight == pytest.approx(1 / 3)
