from fractions import Fraction
from typing import Callable, Dict, List

import numpy as np
import pytest

from dimsolve.gen import assign_random_weights, gen_planted
from dimsolve.graph import DimGraph, Vertex
from dimsolve.instance import Instance, Label
from dimsolve.oracle import brute_force, verify
from dimsolve.reduce import (
    ChainRecord,
    EdgeDeletionRecord,
    Rule,
    RuleInconsistencyError,
    SixCycleRecord,
    SmallRecord,
    TailRecord,
    apply_structural_rules,
)
from dimsolve.reduce._structural import STRUCTURAL_RULES

from .. import complete, cycle


def _matched(graph: DimGraph, *vertices: int) -> Instance:
    inst = Instance(graph.copy())
    for v in vertices:
        inst.assign(v, Label.M)
    return inst


class TestApplyStructuralRules:
    def test_reduced_instance(self, c6):
        assert apply_structural_rules(Instance(c6)) is None

    def test_refuses_decided_independent_vertices(self, star_instance):
        star_instance.assign(2, Label.I)
        with pytest.raises(RuleInconsistencyError):
            apply_structural_rules(star_instance)

    def test_reports_applied_rule(self, star_instance):
        seen = []
        star_instance.on_rule = seen.append
        star_instance.assign(1, Label.M)
        assert apply_structural_rules(star_instance) is Rule.R13
        assert seen == [Rule.R13]


class TestEdgeDeletions:
    def test_triangle_edge(self):
        inst = _matched(complete(3), 1)
        assert apply_structural_rules(inst) is Rule.R8
        assert inst.graph.edges() == [(1, 2), (1, 3)]
        assert inst.trace == [EdgeDeletionRecord(rule=Rule.R8, edge=(2, 3))]

    def test_five_cycle_edge(self):
        inst = _matched(cycle(5), 1)
        assert apply_structural_rules(inst) is Rule.R9
        assert not inst.graph.has_edge(3, 4)
        assert inst.trace[-1].edge == (3, 4)
        assert inst.trace[-1].lift({(1, 2)}) == {(1, 2)}


class TestSixCycle:
    def test_unweighted(self, c6):
        inst = _matched(c6, 2, 5)
        assert apply_structural_rules(inst) is Rule.R10
        assert inst.graph.vertices() == [4, 5, 6]
        record = inst.trace[-1]
        assert isinstance(record, SixCycleRecord)
        assert record.cycle == (1, 2, 3, 4, 5, 6)
        lifted = record.lift({(4, 5)})
        assert lifted == {(1, 2), (4, 5)}
        assert verify(c6, lifted)

    def test_weights_are_folded(self, c6_weighted):
        inst = _matched(c6_weighted, 2, 5)
        apply_structural_rules(inst)
        assert inst.graph.weight(4, 5) == 5
        assert inst.graph.weight(5, 6) == Fraction(-1, 2)

    def test_other_neighbors_of_hub_become_independent(self):
        # six-cycle 1..6 with a pendant 7 on the hub 5
        g = DimGraph.from_edges(7, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 6), (5, 7)])
        inst = _matched(g, 2, 5)
        assert apply_structural_rules(inst) is Rule.R10
        assert inst.label(7) is Label.I


class TestChain:
    def test_contracts_into_matched_vertex(self):
        # 5 - 1 - 2 - 3 - 4 - 6 with both chain ends matched
        g = DimGraph.from_edges(6, [(5, 1), (1, 2), (2, 3), (3, 4), (4, 6)])
        inst = _matched(g, 1, 4)
        assert apply_structural_rules(inst) is Rule.R11
        record = inst.trace[-1]
        assert isinstance(record, ChainRecord)
        assert record.chain == (1, 2, 3, 4)
        assert inst.label(record.merged) is Label.M
        assert sorted(inst.graph.neighbors(record.merged)) == [5, 6]
        lifted = record.lift({(6, record.merged)})
        assert lifted == {(4, 6), (1, 2)}
        assert verify(g, lifted)

    def test_weights_carry_the_partner_edge(self):
        weights = {(1, 5): 1, (1, 2): 10, (2, 3): 100, (3, 4): 20, (4, 6): 2}
        g = DimGraph.from_edges(6, list(weights), weights)
        inst = _matched(g, 1, 4)
        apply_structural_rules(inst)
        merged = inst.trace[-1].merged
        assert inst.graph.weight(merged, 5) == 21
        assert inst.graph.weight(merged, 6) == 12


class TestTail:
    def test_removes_tail_and_lifts(self):
        # 2 - 1 - 3 - 4 - 5, center 1 matched, single exit 3-4
        g = DimGraph.from_edges(5, [(1, 2), (1, 3), (3, 4), (4, 5)])
        inst = _matched(g, 1)
        assert apply_structural_rules(inst) is Rule.R12
        assert inst.graph.vertices() == [4, 5]
        record = inst.trace[-1]
        assert record == TailRecord(center=1, exit_neighbor=3, exit_vertex=4, fallback=2, offset=0)
        lifted = record.lift({(4, 5)})
        assert lifted == {(1, 2), (4, 5)}
        assert verify(g, lifted)

    def test_partner_is_exit_neighbor_when_exit_is_free(self):
        record = TailRecord(center=1, exit_neighbor=3, exit_vertex=4, fallback=2)
        assert record.lift({(5, 6)}) == {(1, 3), (5, 6)}


class TestSmallComponent:
    def test_picks_lightest_neighbor(self):
        weights = {(1, 2): 5, (1, 3): -2, (1, 4): 7}
        inst = _matched(DimGraph.from_edges(4, list(weights), weights), 1)
        assert apply_structural_rules(inst) is Rule.R13
        assert inst.label(3) is Label.M
        assert inst.trace == [SmallRecord(center=1, chosen=3)]

    def test_ties_go_to_smallest_id(self, star_instance):
        star_instance.assign(1, Label.M)
        apply_structural_rules(star_instance)
        assert star_instance.label(2) is Label.M


class _Site:
    """
    A planted yes-instance on 7 vertices to which one rule site is grafted.

    Site vertices that are matched in the planted extension only link to the host's independent
    side and the others only to its matched side, so the graph keeps a solution covering the
    vertices the site pins to M.
    """

    def __init__(self, seed: int) -> None:
        self.rng = np.random.default_rng(seed)
        self.host = gen_planted(4, 3, 0.6, seed=seed)
        self.edges = list(self.host.edges())
        self.n = len(self.host)
        self.host_m = sorted({v for e in self.host.planted for v in e})
        self.host_i = sorted(set(self.host.vertices()).difference(self.host_m))

    def fresh(self, count: int) -> List[Vertex]:
        ids = list(range(self.n + 1, self.n + count + 1))
        self.n += count
        return ids

    def link(self, x: Vertex, side: List[Vertex]) -> None:
        self.edges.extend((x, v) for v in side if self.rng.random() < 0.5)

    def graph(self) -> DimGraph:
        return DimGraph.from_edges(self.n, self.edges)


def _triangle_site(site: _Site) -> List[Vertex]:
    u, v, v2 = site.fresh(3)
    site.edges += [(u, v), (u, v2), (v, v2)]
    site.link(v, site.host_i)
    site.link(v2, site.host_m)
    return [u]


def _five_cycle_site(site: _Site) -> List[Vertex]:
    u, v, a, b, v2, c = site.fresh(6)
    site.edges += [(u, v), (v, a), (a, b), (b, v2), (v2, u), (b, c)]
    site.link(v, site.host_i)
    site.link(a, site.host_m)
    site.link(v2, site.host_m)
    site.link(c, site.host_i)
    return [u]


def _six_cycle_site(site: _Site) -> List[Vertex]:
    v1, v2, v3, v4, v5, v6, w = site.fresh(7)
    site.edges += [(v1, v2), (v2, v3), (v3, v4), (v4, v5), (v5, v6), (v6, v1), (v5, w)]
    site.link(v4, site.host_m)
    site.link(v6, site.host_i)
    site.link(w, site.host_m)
    return [v2, v5]


def _chain_site(site: _Site) -> List[Vertex]:
    v1, v2, v3, v4, a, b = site.fresh(6)
    site.edges += [(v1, v2), (v2, v3), (v3, v4), (v1, a), (v4, b)]
    site.link(v1, site.host_i)
    site.link(a, site.host_m)
    site.link(b, site.host_i)
    return [v1, v4]


def _tail_site(site: _Site) -> List[Vertex]:
    u, v, *leaves = site.fresh(3 + int(site.rng.integers(2)))
    exits = [x for x in site.host.vertices() if site.host.degree(x) > 0]
    a = exits[int(site.rng.integers(len(exits)))]
    site.edges += [(u, v), (v, a)] + [(u, leaf) for leaf in leaves]
    return [u]


def _star_site(site: _Site) -> List[Vertex]:
    u, *leaves = site.fresh(3 + int(site.rng.integers(2)))
    site.edges += [(u, leaf) for leaf in leaves]
    return [u]


_RULE_SITES: Dict[Rule, Callable[[_Site], List[Vertex]]] = {
    Rule.R8: _triangle_site,
    Rule.R9: _five_cycle_site,
    Rule.R10: _six_cycle_site,
    Rule.R11: _chain_site,
    Rule.R12: _tail_site,
    Rule.R13: _star_site,
}


class TestSingleRuleCorpus:
    @pytest.mark.parametrize("weighted", [False, True], ids=["unweighted", "weighted"])
    @pytest.mark.parametrize("rule", list(_RULE_SITES))
    def test_rule_keeps_the_optimum_and_lifts(self, rule, weighted):
        apply = dict(STRUCTURAL_RULES)[rule]
        mode = "min" if weighted else "decide"
        for seed in range(15):
            site = _Site(seed)
            pinned = _RULE_SITES[rule](site)
            graph = site.graph()
            if weighted:
                graph = assign_random_weights(graph, -10, 10, seed=seed)
            expected = brute_force(graph, mode, matched=pinned)
            assert expected is not None, seed

            inst = Instance(graph.copy())
            for v in pinned:
                inst.assign(v, Label.M)
            assert apply(inst), seed
            (record,) = inst.trace
            found = brute_force(inst.graph, mode, matched=inst.m_vertices(), independent=inst.i_vertices())
            assert found is not None, seed

            lifted = record.lift(set(found.edges))
            assert verify(graph, lifted), seed
            assert set(pinned) <= {v for e in lifted for v in e}, seed
            if weighted:
                assert found.total_weight + record.offset == expected.total_weight, seed
                assert graph.total_weight(lifted) == expected.total_weight, seed
