import pytest

from dimsolve.branch import BranchChoice, BranchStep, BranchUsageError, earliest_step, select_branch_vertex
from dimsolve.graph import DimGraph
from dimsolve.instance import Instance, Label

from .. import cycle, path


def _anchored(n: int, edges, anchor: int = 1) -> Instance:
    inst = Instance(DimGraph.from_edges(n, edges))
    inst.assign(anchor, Label.M)
    return inst


class TestLadder:
    def test_effective_vertex(self):
        inst = _anchored(7, [(1, 2), (1, 3), (2, 4), (2, 5), (3, 6), (4, 7), (5, 7), (6, 7)])
        assert select_branch_vertex(inst) == BranchChoice(2, BranchStep.EFFECTIVE, anchor=1, lam=0, x=2)

    def test_degree_two_anchor(self):
        inst = _anchored(6, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 6)])
        assert select_branch_vertex(inst) == BranchChoice(2, BranchStep.DEGREE_TWO_ANCHOR, anchor=1, lam=0, x=2)

    def test_two_degree_two_prefers_wider_layer(self):
        inst = _anchored(7, [(1, 2), (1, 3), (1, 4), (2, 5), (3, 6), (6, 7)])
        assert select_branch_vertex(inst) == BranchChoice(3, BranchStep.TWO_DEGREE_TWO, anchor=1, lam=1, x=2)

    def test_five_cycle(self):
        inst = _anchored(7, [(1, 2), (2, 5), (5, 6), (3, 6), (1, 3), (1, 4), (4, 7)])
        assert select_branch_vertex(inst) == BranchChoice(4, BranchStep.FIVE_CYCLE, anchor=1, lam=1, x=2)

    def test_any_anchor(self, star_instance):
        star_instance.assign(1, Label.M)
        assert select_branch_vertex(star_instance) == BranchChoice(2, BranchStep.ANY_ANCHOR, anchor=1, lam=1, x=0)

    def test_no_anchor_prefers_short_cycles(self):
        inst = Instance(DimGraph.from_edges(6, [(1, 2), (2, 3), (3, 4), (1, 4), (4, 5), (5, 6)]))
        choice = select_branch_vertex(inst)
        assert choice == BranchChoice(4, BranchStep.NO_ANCHOR)
        assert choice.anchor is None

    def test_no_anchor_on_plain_cycle(self, c6):
        assert select_branch_vertex(Instance(c6)).vertex == 1


class TestEarliestStep:
    @pytest.mark.parametrize(
        "anchor, expected",
        [(None, BranchStep.NO_ANCHOR), (1, BranchStep.DEGREE_TWO_ANCHOR)],
    )
    def test_on_six_cycle(self, anchor, expected):
        inst = Instance(cycle(6))
        if anchor is not None:
            inst.assign(anchor, Label.M)
        assert earliest_step(inst) is expected

    def test_agrees_with_selection(self, star_instance):
        star_instance.assign(1, Label.M)
        assert earliest_step(star_instance) is select_branch_vertex(star_instance).step


class TestUsage:
    def test_refuses_independent_vertices(self, star_instance):
        star_instance.assign(2, Label.I)
        with pytest.raises(BranchUsageError):
            select_branch_vertex(star_instance)

    def test_refuses_empty_instance(self):
        with pytest.raises(BranchUsageError):
            select_branch_vertex(Instance(DimGraph.from_edges(0, [])))

    def test_debug_refuses_unreduced_instance(self):
        with pytest.raises(BranchUsageError):
            select_branch_vertex(Instance(path(3)), debug=True)

    def test_debug_accepts_reduced_instance(self):
        inst = Instance(cycle(6))
        inst.assign(1, Label.M)
        assert select_branch_vertex(inst, debug=True).step is BranchStep.DEGREE_TWO_ANCHOR
