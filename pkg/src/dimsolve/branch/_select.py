import dataclasses
import enum
import logging
from typing import Callable, List, Optional

from ..constants import DimError
from ..graph import Vertex
from ..instance import Instance, Label
from ..reduce import RuleInconsistencyError, check_reduced_structure

logger = logging.getLogger(__name__)


class BranchUsageError(DimError, ValueError):
    """Raised when branch selection is asked about an instance that is not ready for branching."""


class BranchStep(enum.StrEnum):
    """Case of the branching ladder that picked the vertex, in priority order."""

    EFFECTIVE = "5a"
    DEGREE_TWO_ANCHOR = "5b"
    TWO_DEGREE_TWO = "5c"
    FIVE_CYCLE = "5d"
    ANY_ANCHOR = "5e"
    NO_ANCHOR = "5f"


@dataclasses.dataclass(frozen=True)
class BranchChoice:
    """
    The vertex to branch on and why.

    Attributes:
        vertex: The U-vertex ``v1`` moved to M in one child and to I in the other
        step: The case that selected it
        anchor: The M0-vertex ``u`` next to ``v1``, absent in case 5f
        lam: ``min(1, deg(u) - 2)`` when an anchor exists
        x: Number of U-vertices at distance two from the edge ``u v1`` when an anchor exists
    """

    vertex: Vertex
    step: BranchStep
    anchor: Optional[Vertex] = None
    lam: Optional[int] = None
    x: Optional[int] = None


def _anchored(inst: Instance, step: BranchStep, u: Vertex, v1: Vertex) -> BranchChoice:
    graph = inst.graph
    second = graph.neighbors_k((u, v1), 2)
    return BranchChoice(
        vertex=v1,
        step=step,
        anchor=u,
        lam=min(1, graph.degree(u) - 2),
        x=sum(1 for w in second if inst.is_u(w)),
    )


def _second_layer_size(inst: Instance, u: Vertex, v: Vertex) -> int:
    return len(inst.graph.neighbors_k((u, v), 2))


def _degree_two_nbrs(inst: Instance, u: Vertex) -> List[Vertex]:
    graph = inst.graph
    return [w for w in sorted(graph.neighbors(u)) if graph.degree(w) == 2]


def _effective(inst: Instance) -> Optional[BranchChoice]:
    graph = inst.graph
    best = None
    for u in inst.m0():
        for v1 in inst.u_neighbors(u):
            if graph.degree(v1) >= 3:
                key = (graph.degree(u), v1, u)
                best = key if best is None or key < best else best
    if best is None:
        return None
    _, v1, u = best
    return _anchored(inst, BranchStep.EFFECTIVE, u, v1)


def _degree_two_anchor(inst: Instance) -> Optional[BranchChoice]:
    for u in inst.m0():
        if inst.graph.degree(u) == 2:
            return _anchored(inst, BranchStep.DEGREE_TWO_ANCHOR, u, inst.u_neighbors(u)[0])
    return None


def _widest(inst: Instance, u: Vertex, candidates: List[Vertex]) -> Vertex:
    return min(candidates, key=lambda w: (-_second_layer_size(inst, u, w), w))


def _two_degree_two(inst: Instance) -> Optional[BranchChoice]:
    for u in inst.m0():
        pair = [w for w in _degree_two_nbrs(inst, u) if inst.is_u(w)]
        if len(pair) == 2:
            return _anchored(inst, BranchStep.TWO_DEGREE_TWO, u, _widest(inst, u, pair))
    return None


def _five_cycle(inst: Instance) -> Optional[BranchChoice]:
    for u in inst.m0():
        low = _degree_two_nbrs(inst, u)
        if len(low) < 3:
            continue
        cycle = inst.graph.find_small_cycle(u, 5)
        if cycle is None:
            continue
        rest = [w for w in low if w not in (cycle[1], cycle[4])]
        if rest:
            return _anchored(inst, BranchStep.FIVE_CYCLE, u, rest[0])
    return None


def _any_anchor(inst: Instance) -> Optional[BranchChoice]:
    m0 = inst.m0()
    if not m0:
        return None
    u = m0[0]
    return _anchored(inst, BranchStep.ANY_ANCHOR, u, _widest(inst, u, inst.u_neighbors(u)))


def _no_anchor(inst: Instance) -> BranchChoice:
    graph = inst.graph
    undecided = inst.undecided()
    tiers: List[Callable[[Vertex], bool]] = [
        lambda v: graph.find_small_cycle(v, 3) is not None or graph.find_small_cycle(v, 4) is not None,
        lambda v: any(graph.degree(w) == 2 for w in graph.neighbors(v)),
        lambda v: True,
    ]
    for tier in tiers:
        hits = [v for v in undecided if tier(v)]
        if hits:
            v1 = min(hits, key=lambda v: (-graph.degree(v), v))
            return BranchChoice(vertex=v1, step=BranchStep.NO_ANCHOR)
    raise BranchUsageError("No U-vertex to branch on")


_LADDER = [_effective, _degree_two_anchor, _two_degree_two, _five_cycle, _any_anchor]


def _check_anchor_neighborhoods(inst: Instance) -> None:
    """Every U-neighbor ``v`` of an M0-vertex ``u`` has degree at most 2 and only U-vertices two steps from ``uv``."""
    graph = inst.graph
    for u in inst.m0():
        for v in inst.u_neighbors(u):
            if graph.degree(v) > 2:
                raise RuleInconsistencyError(f"U-neighbor {v} of M0-vertex {u} has degree {graph.degree(v)}")
            decided = sorted(w for w in graph.neighbors_k((u, v), 2) if not inst.is_u(w))
            if decided:
                raise RuleInconsistencyError(f"Decided vertices {decided} two steps from edge {u}-{v}")


def earliest_step(inst: Instance) -> BranchStep:
    """
    First case of the ladder whose condition holds, ignoring every tie-break.

    Used to cross-check ``select_branch_vertex``.
    """
    graph = inst.graph
    m0 = inst.m0()
    if any(graph.degree(v) >= 3 for u in m0 for v in inst.u_neighbors(u)):
        return BranchStep.EFFECTIVE
    if any(graph.degree(u) == 2 for u in m0):
        return BranchStep.DEGREE_TWO_ANCHOR
    if any(sum(1 for w in _degree_two_nbrs(inst, u) if inst.is_u(w)) == 2 for u in m0):
        return BranchStep.TWO_DEGREE_TWO
    for u in m0:
        if len(_degree_two_nbrs(inst, u)) >= 3 and graph.find_small_cycle(u, 5) is not None:
            return BranchStep.FIVE_CYCLE
    return BranchStep.ANY_ANCHOR if m0 else BranchStep.NO_ANCHOR


def select_branch_vertex(inst: Instance, *, debug: bool = False) -> BranchChoice:
    """
    Picks the vertex to branch on.

    Cases are tried in order: 5a an effective vertex next to an M0-vertex of least degree; 5b a
    neighbor of a degree-2 M0-vertex; 5c the degree-2 neighbor with the widest second layer of an
    M0-vertex with exactly two degree-2 U-neighbors; 5d a degree-2 neighbor off a 5-cycle through an
    M0-vertex with at least three degree-2 neighbors; 5e the widest neighbor of any M0-vertex; 5f
    with no M0-vertex, a vertex on a triangle or 4-cycle, else one next to a degree-2 vertex, else
    any, each time of maximum degree. Remaining ties go to the lowest id.

    Args:
        inst: A reduced, connected instance without I- and M1-vertices
        debug: Check the reduced structure first and re-derive the case independently

    Returns:
        BranchChoice: The selected vertex and its case

    Raises:
        BranchUsageError: If the instance has decided I/M1 vertices, no U-vertex, or (debug) is not reduced
        RuleInconsistencyError: If a debug cross-check fails
    """
    state = inst.labels.state
    if any(state[v] is Label.I for v in inst.graph) or inst.m1():
        raise BranchUsageError("Branching needs an instance without I- and M1-vertices")
    if not inst.count_undecided():
        raise BranchUsageError("Branching needs at least one U-vertex")
    if debug:
        problems = check_reduced_structure(inst)
        if problems:
            raise BranchUsageError(f"Instance is not reduced: {'; '.join(problems)}")

    choice = None
    for case in _LADDER:
        choice = case(inst)
        if choice is not None:
            break
    if choice is None:
        choice = _no_anchor(inst)

    if debug:
        if choice.step is not BranchStep.EFFECTIVE and choice.step is not BranchStep.NO_ANCHOR:
            _check_anchor_neighborhoods(inst)
        expected = earliest_step(inst)
        if expected is not choice.step:
            raise RuleInconsistencyError(f"Selected case {choice.step} but case {expected} applies first")
    logger.debug("Branching on %s (case %s, anchor %s)", choice.vertex, choice.step, choice.anchor)
    return choice
