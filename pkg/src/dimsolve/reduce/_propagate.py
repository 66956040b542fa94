import logging
from typing import Optional

from ..instance import Instance, Label, Violation
from ._rules import Rule

logger = logging.getLogger(__name__)


def propagate(inst: Instance) -> Optional[Violation]:
    """
    Applies the forced-label rules 2, 3 and 4 until the worklist is drained.

    Each queued vertex is checked against the Basic Conditions before any rule fires from it, so
    the first violation reachable from the queued changes is reported (rule 1).

    Args:
        inst: The instance to update in place

    Returns:
        Optional[Violation]: None at a fixpoint without violations, else the violation found
    """
    state, m_count = inst.labels.state, inst.labels.m_count
    graph = inst.graph
    while (x := inst.pop_pending()) is not None:
        if x not in graph:
            continue
        label = state[x]
        if label is Label.U:
            continue
        neighbors = sorted(graph.neighbors(x))
        if label is Label.I:
            for w in neighbors:
                if state[w] is Label.I:
                    inst.note_rule(Rule.R1)
                    return Violation(1, (min(x, w), max(x, w)))
            for w in neighbors:
                if state[w] is Label.U:
                    inst.assign(w, Label.M)
                    inst.note_rule(Rule.R3)
            continue

        count = m_count[x]
        if count >= 2:
            inst.note_rule(Rule.R1)
            return Violation(2, (x, *(w for w in neighbors if state[w] is Label.M)))
        undecided = [w for w in neighbors if state[w] is Label.U]
        if count == 1:
            for w in undecided:
                inst.assign(w, Label.I)
                inst.note_rule(Rule.R2)
        elif not undecided:
            inst.note_rule(Rule.R1)
            return Violation(3, (x,))
        elif len(undecided) == 1:
            inst.assign(undecided[0], Label.M)
            inst.note_rule(Rule.R4)
    return None
