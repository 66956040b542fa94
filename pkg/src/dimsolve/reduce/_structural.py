import logging
from typing import Callable, List, Optional, Tuple

from ..graph import RulePreconditionError, Vertex
from ..instance import Instance, Label
from ._records import ChainRecord, EdgeDeletionRecord, SixCycleRecord, SmallRecord, TailRecord
from ._rules import Rule, RuleInconsistencyError

logger = logging.getLogger(__name__)


def _other(inst: Instance, x: Vertex, known: Vertex) -> Vertex:
    """The neighbor of the degree-2 vertex ``x`` that is not ``known``."""
    (y,) = (w for w in inst.graph.neighbors(x) if w != known)
    return y


def _delete_triangle_edge(inst: Instance) -> bool:
    graph = inst.graph
    for u in inst.m0():
        if graph.degree(u) != 2:
            continue
        v, v2 = sorted(graph.neighbors(u))
        if graph.has_edge(v, v2):
            logger.debug("Rule 8 at %s: deleting %s-%s", u, v, v2)
            inst.delete_edge(v, v2)
            inst.trace.append(EdgeDeletionRecord(rule=Rule.R8, edge=(v, v2)))
            return True
    return False


def _delete_five_cycle_edge(inst: Instance) -> bool:
    graph = inst.graph
    for u in inst.m0():
        if graph.degree(u) != 2:
            continue
        cycle = graph.find_small_cycle(u, 5)
        if cycle is None:
            continue
        a, b = cycle[2], cycle[3]
        logger.debug("Rule 9 at %s: deleting %s-%s of cycle %s", u, a, b, cycle)
        inst.delete_edge(a, b)
        inst.trace.append(EdgeDeletionRecord(rule=Rule.R9, edge=(min(a, b), max(a, b))))
        return True
    return False


def _find_six_cycle(inst: Instance) -> Optional[Tuple[Vertex, ...]]:
    graph, state = inst.graph, inst.labels.state
    for v2 in inst.m0():
        if graph.degree(v2) != 2:
            continue
        v1, v3 = sorted(graph.neighbors(v2))
        if graph.degree(v1) != 2 or graph.degree(v3) != 2:
            continue
        v6, v4 = _other(inst, v1, v2), _other(inst, v3, v2)
        if v4 == v6 or not (inst.is_u(v4) and inst.is_u(v6)):
            continue
        shared = sorted(set(graph.neighbors(v4)).intersection(graph.neighbors(v6)).difference((v1, v3)))
        stray = [w for w in shared if state[w] is Label.I or inst.is_m1(w)]
        if stray:
            raise RuleInconsistencyError(f"Six-cycle through {v2} closes at decided vertices {stray}")
        hubs = [w for w in shared if inst.is_m0(w)]
        if hubs:
            return (v1, v2, v3, v4, hubs[0], v6)
    return None


def _remove_six_cycle_path(inst: Instance) -> bool:
    site = _find_six_cycle(inst)
    if site is None:
        return False
    v1, v2, v3, v4, v5, v6 = site
    graph = inst.graph
    graph.add_weight(v4, v5, graph.weight(v1, v2))
    graph.add_weight(v5, v6, graph.weight(v2, v3))
    logger.debug("Rule 10 on cycle %s", site)
    inst.remove_vertices((v1, v2, v3))
    for w in sorted(graph.neighbors(v5)):
        if w in (v4, v6):
            continue
        if not inst.is_u(w):
            raise RuleInconsistencyError(f"Neighbor {w} of {v5} is already {inst.label(w)}")
        inst.assign(w, Label.I)
    inst.trace.append(SixCycleRecord(cycle=site))
    return True


def _find_chain(inst: Instance) -> Optional[Tuple[Vertex, Vertex, Vertex, Vertex]]:
    graph = inst.graph
    for v1 in inst.m0():
        for v2 in sorted(graph.neighbors(v1)):
            if graph.degree(v2) != 2 or not inst.is_u(v2):
                continue
            v3 = _other(inst, v2, v1)
            if graph.degree(v3) != 2 or not inst.is_u(v3):
                continue
            v4 = _other(inst, v3, v2)
            if v4 != v1 and inst.is_m0(v4):
                return (v1, v2, v3, v4)
    return None


def _contract_chain(inst: Instance) -> bool:
    site = _find_chain(inst)
    if site is None:
        return False
    v1, v2, v3, v4 = site
    graph = inst.graph
    side_a = frozenset(graph.neighbors(v1)) - {v2}
    side_b = frozenset(graph.neighbors(v4)) - {v3}
    if side_a & side_b or graph.has_edge(v1, v4):
        raise RulePreconditionError(f"Chain {list(site)} ends share a neighbor")
    weights = None
    if graph.weighted:
        weights = {a: graph.weight(v1, a) + graph.weight(v3, v4) for a in side_a}
        weights.update({b: graph.weight(v4, b) + graph.weight(v1, v2) for b in side_b})
    merged = inst.contract(site, Label.M, weights)
    logger.debug("Rule 11 contracted chain %s into %s", site, merged)
    inst.trace.append(ChainRecord(chain=site, merged=merged, side_a=side_a, side_b=side_b))
    return True


def _lightest(inst: Instance, u: Vertex, candidates: List[Vertex]) -> Vertex:
    return min(candidates, key=lambda w: (inst.graph.weight(u, w), w))


def _independent_neighborhood(inst: Instance, u: Vertex) -> Optional[List[Vertex]]:
    """N(u) when it is an independent set of size at least two."""
    graph = inst.graph
    nbrs = sorted(graph.neighbors(u))
    if len(nbrs) < 2 or any(graph.has_edge(a, b) for i, a in enumerate(nbrs) for b in nbrs[i + 1 :]):
        return None
    return nbrs


def _component_size(inst: Instance, u: Vertex) -> int:
    return len(inst.graph.component_of(u))


def _remove_tail(inst: Instance) -> bool:
    graph = inst.graph
    for u in inst.m0():
        nbrs = _independent_neighborhood(inst, u)
        if nbrs is None:
            continue
        closed = {u, *nbrs}
        exits = [(v, a) for v in nbrs for a in sorted(graph.neighbors(v)) if a not in closed]
        if len(exits) != 1:
            continue
        if _component_size(inst, u) <= len(closed) + 1:
            continue
        v, a = exits[0]
        fallback = _lightest(inst, u, [w for w in nbrs if w != v])
        offset = graph.weight(u, v)
        delta = graph.weight(u, fallback) - offset
        logger.debug("Rule 12 removing tail at %s exiting %s-%s", u, v, a)
        inst.remove_vertices(closed)
        for w in sorted(graph.neighbors(a)):
            graph.add_weight(a, w, delta)
        inst.trace.append(TailRecord(center=u, exit_neighbor=v, exit_vertex=a, fallback=fallback, offset=offset))
        return True
    return False


def _close_small_component(inst: Instance) -> bool:
    graph = inst.graph
    for u in inst.m0():
        nbrs = _independent_neighborhood(inst, u)
        if nbrs is None or not all(inst.is_u(w) for w in nbrs):
            continue
        if _component_size(inst, u) != len(nbrs) + 1:
            continue
        chosen = _lightest(inst, u, nbrs)
        logger.debug("Rule 13 at %s: moving %s to M", u, chosen)
        inst.assign(chosen, Label.M)
        inst.trace.append(SmallRecord(center=u, chosen=chosen))
        return True
    return False


STRUCTURAL_RULES: List[Tuple[Rule, Callable[[Instance], bool]]] = [
    (Rule.R8, _delete_triangle_edge),
    (Rule.R9, _delete_five_cycle_edge),
    (Rule.R10, _remove_six_cycle_path),
    (Rule.R11, _contract_chain),
    (Rule.R12, _remove_tail),
    (Rule.R13, _close_small_component),
]


def apply_structural_rules(inst: Instance) -> Optional[Rule]:
    """
    Applies the first matching rule among rules 8 to 13.

    Rewrites that change the graph push a record onto ``inst.trace``; infeasibility they expose is
    reported by the next propagation.

    Args:
        inst: A pseudo-feasible instance without I- or M1-vertices

    Returns:
        Optional[Rule]: The rule applied, or None when the instance is reduced

    Raises:
        RuleInconsistencyError: If I- or M1-vertices are present or a rule site is malformed
    """
    if inst.i_vertices() or inst.m1():
        raise RuleInconsistencyError("Structural rules need an instance without I- and M1-vertices")
    for rule, apply in STRUCTURAL_RULES:
        if apply(inst):
            inst.note_rule(rule)
            return rule
    return None
