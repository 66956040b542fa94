import logging
from typing import List, Optional

from ..instance import Instance, Label, Violation
from ._propagate import propagate
from ._records import StripRecord
from ._reducibility import structural_reducibility, trial
from ._rules import Rule, RuleInconsistencyError
from ._structural import apply_structural_rules

logger = logging.getLogger(__name__)


def reduce_pseudo(inst: Instance) -> Optional[Violation]:
    """
    Runs rules 1 to 7 until none applies.

    U-vertices are scanned in ascending id order; a hit is applied and propagated at once and the
    scan goes on. Passes repeat until one finds nothing. The structural screen answers what it can
    and trial propagation settles the rest.

    Args:
        inst: The instance to reduce in place

    Returns:
        Optional[Violation]: None once the instance is pseudo-feasible
    """
    violation = propagate(inst)
    if violation is not None:
        return violation
    changed = True
    while changed:
        changed = False
        for v in inst.undecided():
            if v not in inst.graph or not inst.is_u(v):
                continue
            screen = structural_reducibility(inst, v)
            viable_m = screen.viable_m if screen.viable_m is not None else trial(inst, v, Label.M) is None
            viable_i = screen.viable_i if screen.viable_i is not None else trial(inst, v, Label.I) is None
            if viable_m and viable_i:
                continue
            if not viable_m and not viable_i:
                inst.note_rule(Rule.R5)
                return Violation(0, (v,))
            if viable_m:
                inst.assign(v, Label.M)
                inst.note_rule(Rule.R7)
            else:
                inst.assign(v, Label.I)
                inst.note_rule(Rule.R6)
            changed = True
            violation = propagate(inst)
            if violation is not None:
                return violation
    return None


def strip_decided(inst: Instance) -> Optional[StripRecord]:
    """
    Deletes the I- and M1-vertices of a pseudo-feasible instance.

    The matched M1 pairs are final; the record keeps them and their weight for reconstruction.

    Returns:
        Optional[StripRecord]: The pushed record, or None when there was nothing to strip
    """
    doomed = set(inst.i_vertices()).union(inst.m1())
    if not doomed:
        return None
    pairs = inst.matched_pairs()
    record = StripRecord(
        removed=frozenset(doomed),
        pairs=frozenset(pairs),
        offset=inst.graph.total_weight(pairs),
    )
    inst.remove_vertices(doomed)
    inst.trace.append(record)
    logger.debug("Stripped %d decided vertices and %d fixed pairs", len(doomed), len(pairs))
    return record


def check_rule_step(inst: Instance, rule: Rule, undecided_before: int, components_before: int) -> None:
    """Raises when a structural rule grew the U count or, other than rule 12, split a component off."""
    undecided_after = inst.count_undecided()
    if undecided_after > undecided_before:
        raise RuleInconsistencyError(f"{rule} raised the U count from {undecided_before} to {undecided_after}")
    if rule is not Rule.R12 and len(inst.graph.components()) > components_before:
        raise RuleInconsistencyError(f"{rule} disconnected the graph")


def reduce_to_fixpoint(inst: Instance, *, debug: bool = False) -> Optional[Violation]:
    """
    Reduces an instance until none of rules 1 to 13 applies.

    Decided vertices are stripped whenever the instance is pseudo-feasible, so the structural rules
    always see I = M1 = empty.

    Args:
        inst: The instance to reduce in place
        debug: Check after every structural rule that the U count did not grow and, except for rule 12,
            that no component split off; check the reduced structure at the end

    Returns:
        Optional[Violation]: None when a reduced instance was reached

    Raises:
        RuleInconsistencyError: In debug mode, when a check fails
    """
    while True:
        violation = reduce_pseudo(inst)
        if violation is not None:
            return violation
        strip_decided(inst)
        undecided_before = inst.count_undecided()
        components_before = len(inst.graph.components()) if debug else 0
        rule = apply_structural_rules(inst)
        if rule is None:
            break
        if debug:
            check_rule_step(inst, rule, undecided_before, components_before)
    if debug:
        problems = check_reduced_structure(inst)
        if problems:
            raise RuleInconsistencyError("; ".join(problems))
    return None


def check_reduced_structure(inst: Instance) -> List[str]:
    """
    Lists the ways a reduced instance departs from the expected shape.

    Only components without I- and M1-vertices are checked. For each: degree-1 vertices are U with an
    M0 neighbor; no M0-vertex lies in a triangle or a 4-cycle; no two M0-vertices share a U-neighbor;
    no degree-2 M0-vertex lies in a 5-cycle; every M0-vertex has two U-neighbors and two edges
    leaving its closed neighborhood.

    Returns:
        List[str]: One message per failure, empty when the structure holds
    """
    graph = inst.graph
    problems: List[str] = []
    for component in graph.components():
        if any(inst.label(v) is Label.I or inst.is_m1(v) for v in component):
            continue
        owner = {}
        for v in sorted(component):
            degree = graph.degree(v)
            if degree == 1:
                (w,) = graph.neighbors(v)
                if not (inst.is_u(v) and inst.is_m0(w)):
                    problems.append(f"degree-1 vertex {v} is not a U-leaf of an M0-vertex")
            if not inst.is_m0(v):
                continue
            for length in (3, 4):
                if graph.find_small_cycle(v, length) is not None:
                    problems.append(f"M0-vertex {v} lies on a {length}-cycle")
            if degree == 2 and graph.find_small_cycle(v, 5) is not None:
                problems.append(f"degree-2 M0-vertex {v} lies on a 5-cycle")
            u_nbrs = inst.u_neighbors(v)
            if len(u_nbrs) < 2:
                problems.append(f"M0-vertex {v} has {len(u_nbrs)} U-neighbors")
            for w in u_nbrs:
                if w in owner:
                    problems.append(f"M0-vertices {owner[w]} and {v} share U-neighbor {w}")
                owner[w] = v
            closed = {v, *graph.neighbors(v)}
            leaving = sum(1 for w in graph.neighbors(v) for x in graph.neighbors(w) if x not in closed)
            if leaving < 2:
                problems.append(f"M0-vertex {v} has {leaving} edges leaving its closed neighborhood")
    return problems
