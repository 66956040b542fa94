import enum
import logging
from typing import Dict, List, Optional, Tuple

from ..constants import BASE_CASE_MAX_UNDECIDED
from ..graph import DimGraph, Edge, Vertex, Weight, edge_key
from ..instance import Instance, InstanceUsageError, Label
from ..models import Solution
from ..settings import SolveMode

logger = logging.getLogger(__name__)


class _Slot(enum.Enum):
    """Position of a vertex along a path: independent, matched forward, matched backward."""

    INDEPENDENT = 0
    OPEN = 1
    CLOSED = 2


_NEXT = {_Slot.INDEPENDENT: _Slot.OPEN, _Slot.OPEN: _Slot.CLOSED, _Slot.CLOSED: _Slot.INDEPENDENT}


def _better(candidate: Solution, incumbent: Optional[Solution], mode: SolveMode) -> bool:
    if incumbent is None:
        return True
    if mode == "max":
        return candidate.total_weight > incumbent.total_weight
    return candidate.total_weight < incumbent.total_weight


def _enumerate(inst: Instance, mode: SolveMode) -> Optional[Solution]:
    undecided = inst.undecided()
    best: Optional[Solution] = None
    for mask in range(1 << len(undecided)):
        scratch = inst.fork_labels()
        for bit, v in enumerate(undecided):
            scratch.assign(v, Label.M if mask >> bit & 1 else Label.I)
        found = scratch.final_answer()
        if found is None:
            continue
        if mode == "decide":
            return found
        if _better(found, best, mode):
            best = found
    return best


def _walk_order(graph: DimGraph, component: List[Vertex]) -> Tuple[List[Vertex], bool]:
    """Vertices of a path or cycle component in walking order, and whether it is a cycle."""
    ends = [v for v in component if graph.degree(v) <= 1]
    is_cycle = not ends
    start = min(ends) if ends else min(component)
    order = [start]
    previous = None
    current = start
    while True:
        step = sorted(w for w in graph.neighbors(current) if w != previous and w != start)
        if not step:
            break
        previous, current = current, step[0]
        order.append(current)
    return order, is_cycle


def _fits(label: Label, slot: _Slot) -> bool:
    if label is Label.U:
        return True
    return (label is Label.I) == (slot is _Slot.INDEPENDENT)


def _walk(inst: Instance, order: List[Vertex], is_cycle: bool, first: _Slot) -> Optional[Tuple[List[Edge], Weight]]:
    graph = inst.graph
    slots: Dict[Vertex, _Slot] = {}
    slot = first
    for position, v in enumerate(order):
        if position:
            slot = _NEXT[slot]
        if not _fits(inst.label(v), slot):
            return None
        slots[v] = slot
    last = slots[order[-1]]
    if is_cycle:
        if _NEXT[last] is not first:
            return None
    elif last is _Slot.OPEN:
        return None
    pairs = []
    ring = list(zip(order, order[1:])) + ([(order[-1], order[0])] if is_cycle else [])
    for a, b in ring:
        if slots[a] is _Slot.OPEN and slots[b] is _Slot.CLOSED:
            pairs.append(edge_key(a, b))
    return pairs, graph.total_weight(pairs)


def _path_cycle_program(inst: Instance, mode: SolveMode) -> Optional[Solution]:
    graph = inst.graph
    edges: List[Edge] = []
    total = graph.zero
    for component in graph.components():
        order, is_cycle = _walk_order(graph, sorted(component))
        starts = list(_Slot) if is_cycle else [_Slot.INDEPENDENT, _Slot.OPEN]
        best: Optional[Tuple[List[Edge], Weight]] = None
        for first in starts:
            found = _walk(inst, order, is_cycle, first)
            if found is None:
                continue
            if best is None or (mode == "min" and found[1] < best[1]) or (mode == "max" and found[1] > best[1]):
                best = found
            if mode == "decide":
                break
        if best is None:
            return None
        edges.extend(best[0])
        total += best[1]
    return Solution(edges=frozenset(edges), total_weight=total)


def solve_base(
    inst: Instance, mode: SolveMode = "decide", *, base_case_size: int = BASE_CASE_MAX_UNDECIDED
) -> Optional[Solution]:
    """
    Solves an instance that is small or has maximum degree at most 2.

    With at most ``base_case_size`` U-vertices every labeling of U is tried. Otherwise every
    component is a path or a cycle; along such a component the side of each vertex is fixed by the
    side of the first one, so trying the two (path) or three (cycle) starting states settles it.

    Args:
        inst: The instance; it is not modified
        mode: ``decide`` returns any solution, ``min``/``max`` an optimal one
        base_case_size: Largest U count handled by enumeration

    Returns:
        Optional[Solution]: A solution on the instance's current graph, or None

    Raises:
        InstanceUsageError: If neither condition holds
    """
    if inst.count_undecided() <= base_case_size:
        return _enumerate(inst, mode)
    if inst.graph.max_degree() <= 2:
        return _path_cycle_program(inst, mode)
    raise InstanceUsageError(
        f"Base case needs at most {base_case_size} U-vertices or maximum degree 2, "
        f"got {inst.count_undecided()} and {inst.graph.max_degree()}"
    )
