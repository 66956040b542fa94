from fractions import Fraction

import pytest

from dimsolve.graph import DimGraph, GraphIntegrityError, GraphUsageError, RulePreconditionError

from .. import complete, cycle, path


class TestConstruction:
    def test_from_edges_uses_one_based_ids(self):
        g = DimGraph.from_edges(3, [(1, 2), (3, 2)])
        assert g.vertices() == [1, 2, 3]
        assert g.edges() == [(1, 2), (2, 3)]
        assert not g.weighted

    def test_rejects_loops_and_parallel_edges(self):
        with pytest.raises(GraphUsageError):
            DimGraph.from_edges(2, [(1, 1)])
        with pytest.raises(GraphUsageError):
            DimGraph.from_edges(2, [(1, 2), (2, 1)])

    def test_rejects_unknown_vertex(self):
        with pytest.raises(GraphUsageError):
            DimGraph.from_edges(2, [(1, 3)])

    def test_weighted_graph_needs_every_weight(self):
        with pytest.raises(GraphUsageError):
            DimGraph.from_edges(3, [(1, 2), (2, 3)], {(1, 2): 1})

    def test_weights_are_exact_by_default(self):
        g = DimGraph.from_edges(2, [(1, 2)], {(1, 2): "3/4"})
        assert g.weight(1, 2) == Fraction(3, 4)
        assert isinstance(g.weight(2, 1), Fraction)

    def test_float_mode(self):
        g = DimGraph.from_edges(2, [(1, 2)], {(1, 2): "3/4"}, exact=False)
        assert g.weight(1, 2) == 0.75
        assert isinstance(g.weight(1, 2), float)
        assert g.zero == 0.0

    def test_unweighted_edges_weigh_zero(self):
        g = path(3)
        assert g.weight(1, 2) == 0
        assert g.total_weight(g.edges()) == 0


class TestNeighborsK:
    def test_path_middle(self):
        assert path(3).neighbors_k(2, 1) == {1, 3}

    def test_layer_zero(self):
        g = cycle(6)
        assert g.neighbors_k(3, 0) == {3}
        assert g.neighbors_k((1, 2), 0) == {1, 2}

    def test_edge_distance_two_on_c6(self):
        assert cycle(6).neighbors_k((1, 2), 2) == {4, 5}

    def test_isolated_vertex(self):
        g = DimGraph.from_edges(3, [(1, 2)])
        assert g.neighbors_k(3, 1) == set()

    def test_layers_are_disjoint(self):
        g = cycle(7)
        layers = [g.neighbors_k(1, k) for k in range(4)]
        for i in range(4):
            for j in range(i + 1, 4):
                assert not layers[i] & layers[j]
        assert set().union(*layers) <= set(g.vertices())

    def test_errors(self):
        g = path(3)
        with pytest.raises(GraphUsageError):
            g.neighbors_k(9, 1)
        with pytest.raises(GraphUsageError):
            g.neighbors_k((1, 3), 1)
        with pytest.raises(GraphUsageError):
            g.neighbors_k(1, 4)


class TestFindSmallCycle:
    def test_triangle(self):
        assert complete(3).find_small_cycle(1, 3) == [1, 2, 3]

    def test_girth_four_has_no_triangle(self):
        assert cycle(4).find_small_cycle(1, 3) is None

    def test_full_six_cycle(self):
        assert cycle(6).find_small_cycle(1, 6) == [1, 2, 3, 4, 5, 6]

    def test_predicate_filters_vertices(self):
        g = complete(4)
        assert g.find_small_cycle(1, 3, predicate=lambda v: v != 2) == [1, 3, 4]
        assert g.find_small_cycle(1, 3, predicate=lambda v: v != 1) is None

    def test_rejects_other_lengths(self):
        with pytest.raises(GraphUsageError):
            cycle(7).find_small_cycle(1, 7)


class TestEdits:
    def test_delete_edge_of_five_cycle_leaves_path(self):
        g = cycle(5)
        g.delete_edge(3, 4)
        assert g.number_of_edges() == 4
        assert g.find_small_cycle(1, 5) is None
        assert g.is_connected()

    def test_delete_vertices_from_c6(self):
        g = cycle(6)
        g.delete_vertices([1, 2, 3])
        assert g.edges() == [(4, 5), (5, 6)]
        assert g.is_retired(2)
        with pytest.raises(GraphUsageError):
            g.delete_vertices([2])

    def test_contract_path(self):
        # a=5 - 1 - 2 - 3 - 4 - b=6
        g = DimGraph.from_edges(6, [(5, 1), (1, 2), (2, 3), (3, 4), (4, 6)])
        new = g.contract_path([1, 2, 3, 4])
        assert new == 7
        assert set(g.neighbors(new)) == {5, 6}
        assert all(g.is_retired(v) for v in (1, 2, 3, 4))
        g.validate()

    def test_contract_collapses_duplicate_adjacency(self):
        g = DimGraph.from_edges(5, [(1, 2), (2, 3), (1, 5), (3, 5), (4, 1)])
        new = g.contract_path([1, 2, 3])
        assert set(g.neighbors(new)) == {4, 5}

    def test_contract_refuses_chord(self):
        g = complete(3)
        with pytest.raises(RulePreconditionError):
            g.contract_path([1, 2, 3])
        assert g.number_of_edges() == 3

    def test_weighted_contract_refuses_shared_neighbor(self):
        g = DimGraph.from_edges(4, [(1, 2), (1, 4), (2, 4)], {(1, 2): 1, (1, 4): 1, (2, 4): 1})
        with pytest.raises(RulePreconditionError):
            g.contract_path([1, 2], {4: 0})

    def test_weighted_contract_uses_given_weights(self):
        g = DimGraph.from_edges(4, [(3, 1), (1, 2), (2, 4)], {(1, 3): 1, (1, 2): 2, (2, 4): 3})
        new = g.contract_path([1, 2], {3: 10, 4: 20})
        assert g.weight(new, 3) == 10
        assert g.weight(4, new) == 20

    def test_fresh_ids_never_reuse_retired_ones(self):
        g = path(4)
        g.delete_vertices([4])
        first = g.contract_path([1, 2])
        second = g.contract_path([first, 3])
        assert second > first > 4


class TestWholeGraph:
    def test_components_sorted_by_minimum(self):
        g = DimGraph.from_edges(4, [(3, 4), (1, 2)])
        assert g.components() == [{1, 2}, {3, 4}]

    def test_components_restricted(self):
        assert cycle(6).components([1, 2, 4, 5]) == [{1, 2}, {4, 5}]
        assert cycle(6).components([]) == []

    def test_components_reject_dead_vertices(self):
        with pytest.raises(GraphUsageError):
            cycle(6).components([7])

    def test_component_of(self):
        g = DimGraph.from_edges(5, [(1, 2), (3, 4), (4, 5)])
        assert g.component_of(5) == {3, 4, 5}

    def test_copy_is_independent(self):
        g = cycle(5)
        clone = g.copy()
        clone.delete_edge(1, 2)
        assert g.has_edge(1, 2)

    def test_subgraph_copy(self):
        sub = cycle(6).subgraph_copy([1, 2, 3])
        assert sub.edges() == [(1, 2), (2, 3)]

    def test_negated_and_unit_weights(self, c6_weighted):
        neg = c6_weighted.negated()
        assert neg.weight(2, 3) == Fraction(-1, 2)
        assert neg.weight(5, 6) == 1
        unit = cycle(4).with_unit_weights()
        assert unit.weighted
        assert unit.total_weight(unit.edges()) == 4

    def test_validate_flags_weight_mode_mismatch(self):
        g = cycle(3)
        g.validate()
        g._g.adj[1][2]["weight"] = Fraction(1)
        with pytest.raises(GraphIntegrityError):
            g.validate()
