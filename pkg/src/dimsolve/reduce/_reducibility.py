import dataclasses
import itertools
import logging
from typing import List, Optional

from ..graph import Vertex
from ..instance import Instance, InstanceUsageError, Label, Violation
from ._propagate import propagate

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class Reducibility:
    """
    Which sides a U-vertex can still take.

    ``None`` means the screen that produced the value could not tell. Values from
    ``classify_reducibility`` are always definite.

    Attributes:
        viable_m: Moving the vertex to M survives propagation
        viable_i: Moving the vertex to I survives propagation
    """

    viable_m: Optional[bool] = None
    viable_i: Optional[bool] = None

    @property
    def infeasible(self) -> bool:
        """Neither label survives propagation."""
        return self.viable_m is False and self.viable_i is False

    @property
    def i_reducible(self) -> bool:
        """The vertex cannot be in M (and is not known to be infeasible)."""
        return self.viable_m is False and self.viable_i is not False

    @property
    def m_reducible(self) -> bool:
        """The vertex cannot be in I (and is not known to be infeasible)."""
        return self.viable_i is False and self.viable_m is not False

    @property
    def unknown(self) -> bool:
        """Both labels survive propagation."""
        return self.viable_m is None and self.viable_i is None


def _require_undecided(inst: Instance, v: Vertex) -> None:
    if v not in inst.graph or not inst.is_u(v):
        raise InstanceUsageError(f"Vertex {v} is not a live U-vertex")


def trial(inst: Instance, v: Vertex, label: Label) -> Optional[Violation]:
    """
    Moves ``v`` on a copy-on-write fork and propagates.

    Returns:
        Optional[Violation]: The violation the move leads to, or None
    """
    scratch = inst.fork_labels()
    scratch.assign(v, label)
    return propagate(scratch)


def classify_reducibility(inst: Instance, v: Vertex) -> Reducibility:
    """
    Classifies a U-vertex by trial propagation of both moves.

    ``inst`` is not modified.

    Args:
        inst: An instance satisfying the Basic Conditions
        v: A live U-vertex

    Returns:
        Reducibility: Both flags definite
    """
    _require_undecided(inst, v)
    return Reducibility(
        viable_m=trial(inst, v, Label.M) is None,
        viable_i=trial(inst, v, Label.I) is None,
    )


def _m_neighbors(inst: Instance, v: Vertex) -> List[Vertex]:
    state = inst.labels.state
    return sorted(w for w in inst.graph.neighbors(v) if state[w] is Label.M)


def _blocked_as_m(inst: Instance, v: Vertex, semantic: bool) -> bool:
    graph, state = inst.graph, inst.labels.state
    # two M-neighbors
    if len(_m_neighbors(inst, v)) >= 2:
        return True
    # two adjacent U-vertices around v and an M0-neighbor u
    for u in _m_neighbors(inst, v):
        if not inst.is_m0(u):
            continue
        ring = sorted(
            w for w in set(graph.neighbors(v)).union(graph.neighbors(u)) if w != v and state[w] is Label.U
        )
        if any(graph.has_edge(a, b) for a, b in itertools.combinations(ring, 2)):
            return True
    if semantic:
        # two U-triangles through v on disjoint pairs
        u_nbrs = inst.u_neighbors(v)
        pairs = [(a, b) for a, b in itertools.combinations(u_nbrs, 2) if graph.has_edge(a, b)]
        for p, q in itertools.combinations(pairs, 2):
            if not set(p).intersection(q):
                return True
    return False


def _blocked_as_i(inst: Instance, v: Vertex) -> bool:
    graph, state = inst.graph, inst.labels.state
    # v is the only U-or-M neighbor of a U-vertex
    for w in inst.u_neighbors(v):
        if all(x == v or state[x] is Label.I for x in graph.neighbors(w)):
            return True
    # 4-cycle v u v' u' closed by the chord vv' or by a degree-2 u
    candidates = sorted(w for w in graph.neighbors(v) if state[w] is not Label.I)
    for u, u2 in itertools.permutations(candidates, 2):
        shared = set(graph.neighbors(u)).intersection(graph.neighbors(u2))
        for v2 in sorted(shared):
            if v2 == v or state[v2] is Label.I:
                continue
            if graph.has_edge(v, v2) or graph.degree(u) == 2:
                return True
    return False


def _in_k4(inst: Instance, v: Vertex) -> bool:
    graph = inst.graph
    nbrs = sorted(graph.neighbors(v))
    return any(
        graph.has_edge(a, b) and graph.has_edge(a, c) and graph.has_edge(b, c)
        for a, b, c in itertools.combinations(nbrs, 3)
    )


def structural_reducibility(inst: Instance, v: Vertex, *, semantic: bool = False) -> Reducibility:
    """
    Screens a U-vertex against local patterns that force one of its sides.

    The default screen only reports patterns whose trial propagation is known to fail, so it never
    contradicts ``classify_reducibility``. With ``semantic=True`` it also reports the K4 pattern
    (both sides blocked) and two U-triangles through ``v`` on disjoint pairs (M blocked); these hold
    in every solution but are not always caught by a single propagation.

    Args:
        inst: An instance satisfying the Basic Conditions
        v: A live U-vertex
        semantic: Also report the solution-level patterns

    Returns:
        Reducibility: False where a pattern matched, None elsewhere
    """
    _require_undecided(inst, v)
    if semantic and _in_k4(inst, v):
        return Reducibility(viable_m=False, viable_i=False)
    viable_m = False if _blocked_as_m(inst, v, semantic) else None
    viable_i = False if _blocked_as_i(inst, v) else None
    return Reducibility(viable_m=viable_m, viable_i=viable_i)
