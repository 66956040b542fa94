import logging
from typing import Optional, Sequence

from ..graph import DimGraph, GraphUsageError, same_weight
from ..models import Solution
from ..reduce import ReconstructionError, RewriteRecord

logger = logging.getLogger(__name__)


def reconstruct(
    trace: Sequence[RewriteRecord], solution: Solution, *, original: Optional[DimGraph] = None
) -> Solution:
    """
    Lifts a solution of a rewritten instance back through the rewrites, newest first.

    Args:
        trace: Records in the order the rewrites were applied
        solution: A solution of the instance after the last rewrite
        original: The graph before the first rewrite; when given, the lifted total is recomputed
            from its weights and must match the accumulated total

    Returns:
        Solution: The lifted solution

    Raises:
        ReconstructionError: If a record does not fit the solution or the totals disagree
    """
    edges = set(solution.edges)
    total = solution.total_weight
    for record in reversed(trace):
        edges = record.lift(edges)
        total = total + record.offset
    if original is not None:
        try:
            recomputed = original.total_weight(edges)
        except GraphUsageError as exc:
            raise ReconstructionError(f"Lifted solution uses a foreign edge: {exc}") from exc
        if not same_weight(recomputed, total):
            raise ReconstructionError(f"Lifted total {total} differs from recomputed total {recomputed}")
        total = recomputed
    return Solution(edges=frozenset(edges), total_weight=total)
