import pytest

from dimsolve.graph import DimGraph
from dimsolve.instance import Instance, InstanceUsageError, Label, Violation
from dimsolve.reduce import (
    Reducibility,
    Rule,
    classify_reducibility,
    propagate,
    reduce_pseudo,
    structural_reducibility,
    trial,
)

from .. import complete, cycle, path, random_corpus


def _recording(inst: Instance) -> list:
    seen: list = []
    inst.on_rule = seen.append
    return seen


class TestPropagate:
    def test_undecided_instance_is_a_fixpoint(self, c6):
        assert propagate(Instance(c6)) is None

    def test_forced_chain_along_a_path(self):
        inst = Instance(path(4))
        seen = _recording(inst)
        inst.assign(1, Label.I)
        assert propagate(inst) is None
        assert [inst.label(v) for v in (1, 2, 3, 4)] == [Label.I, Label.M, Label.M, Label.I]
        assert seen == [Rule.R3, Rule.R4, Rule.R2]

    def test_m0_with_two_undecided_neighbors_waits(self):
        inst = Instance(path(3))
        inst.assign(2, Label.M)
        assert propagate(inst) is None
        assert inst.undecided() == [1, 3]

    def test_adjacent_independent_vertices(self):
        inst = Instance(path(2))
        inst.assign(1, Label.I)
        inst.assign(2, Label.I)
        assert propagate(inst) == Violation(1, (1, 2))

    def test_matched_triangle(self):
        inst = Instance(complete(3))
        seen = _recording(inst)
        for v in (1, 2, 3):
            inst.assign(v, Label.M)
        assert propagate(inst) == Violation(2, (1, 2, 3))
        assert seen == [Rule.R1]

    def test_stranded_matched_vertex(self):
        inst = Instance(path(2))
        inst.assign(1, Label.M)
        inst.assign(2, Label.I)
        assert propagate(inst) == Violation(3, (1,))


class TestReducibility:
    def test_star_center_cannot_be_independent(self, star_instance):
        assert classify_reducibility(star_instance, 1) == Reducibility(viable_m=True, viable_i=False)
        screen = structural_reducibility(star_instance, 1)
        assert screen.m_reducible
        assert screen.viable_m is None

    def test_star_leaf_is_free(self, star_instance):
        assert classify_reducibility(star_instance, 2) == Reducibility(viable_m=True, viable_i=True)
        assert structural_reducibility(star_instance, 2).unknown

    def test_trial_leaves_instance_untouched(self, star_instance):
        assert trial(star_instance, 1, Label.I) == Violation(3, (2,))
        assert star_instance.undecided() == [1, 2, 3, 4]

    def test_k4_only_with_semantic_screen(self):
        inst = Instance(complete(4))
        semantic = structural_reducibility(inst, 1, semantic=True)
        assert semantic.infeasible
        assert structural_reducibility(inst, 1).viable_m is None

    def test_two_disjoint_triangles_block_matching(self):
        # bowtie around vertex 1
        inst = Instance(DimGraph.from_edges(5, [(1, 2), (1, 3), (2, 3), (1, 4), (1, 5), (4, 5)]))
        assert structural_reducibility(inst, 1, semantic=True).viable_m is False

    def test_requires_undecided_vertex(self, star_instance):
        star_instance.assign(1, Label.M)
        with pytest.raises(InstanceUsageError):
            classify_reducibility(star_instance, 1)
        with pytest.raises(InstanceUsageError):
            structural_reducibility(star_instance, 9)

    def test_screen_never_contradicts_trials(self):
        for graph in random_corpus(30, seed=3):
            inst = Instance(graph)
            first = inst.graph.vertices()[0]
            if trial(inst, first, Label.M) is None:
                inst.assign(first, Label.M)
                propagate(inst)
            for v in inst.undecided():
                screen = structural_reducibility(inst, v)
                exact = classify_reducibility(inst, v)
                if screen.viable_m is False:
                    assert exact.viable_m is False, inst.describe()
                if screen.viable_i is False:
                    assert exact.viable_i is False, inst.describe()


class TestReducePseudo:
    def test_star(self, star_instance):
        seen = _recording(star_instance)
        assert reduce_pseudo(star_instance) is None
        assert star_instance.label(1) is Label.M
        assert star_instance.undecided() == [2, 3, 4]
        assert seen == [Rule.R7]

    def test_four_cycle_is_infeasible(self):
        violation = reduce_pseudo(Instance(cycle(4)))
        assert violation == Violation(0, (2,))

    def test_pseudo_feasible_vertices_take_both_sides(self):
        for graph in random_corpus(12, seed=5):
            inst = Instance(graph)
            if reduce_pseudo(inst) is not None:
                continue
            assert inst.check_basic_conditions() is None
            for v in inst.undecided():
                assert classify_reducibility(inst, v) == Reducibility(viable_m=True, viable_i=True)
