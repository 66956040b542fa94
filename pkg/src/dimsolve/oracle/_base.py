import dataclasses
import logging
from typing import Iterable, List, Optional, Set

import numpy as np

from ..constants import BRUTE_FORCE_MAX_VERTICES, DimError
from ..graph import DimGraph, Edge, Vertex, Weight, edge_key, same_weight
from ..models import Solution
from ..settings import SolveMode

logger = logging.getLogger(__name__)

_CHUNK = 1 << 20


class OracleUsageError(DimError, ValueError):
    """Raised when the oracle is given an oversized graph or edges the graph does not have."""


@dataclasses.dataclass(frozen=True)
class Verdict:
    """
    Outcome of a certificate check.

    Attributes:
        accepted: The edge set is a dominating induced matching of the graph
        reason: Why it was rejected; empty when accepted
        weight: Total weight of the checked edges under the graph's weights
    """

    accepted: bool
    reason: str = ""
    weight: Optional[Weight] = None

    def __bool__(self) -> bool:
        return self.accepted


def _feasible_masks(graph: DimGraph) -> np.ndarray:
    """All bitmasks (bit i set: the i-th vertex in sorted order is matched) of valid bipartitions, ascending."""
    vertices = graph.vertices()
    index = {v: i for i, v in enumerate(vertices)}
    n = len(vertices)
    adjacency = np.zeros(n, dtype=np.int64)
    degree = np.zeros(n, dtype=np.int64)
    for u, v in graph.edges():
        adjacency[index[u]] |= 1 << index[v]
        adjacency[index[v]] |= 1 << index[u]
        degree[index[u]] += 1
        degree[index[v]] += 1
    found: List[np.ndarray] = []
    total = 1 << n
    for start in range(0, total, _CHUNK):
        masks = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        ok = np.ones(masks.shape, dtype=bool)
        for i in range(n):
            inside = np.bitwise_count(masks & adjacency[i])
            matched = ((masks >> i) & 1).astype(bool)
            # a matched vertex has one matched neighbor, an independent one has only matched neighbors
            ok &= np.where(matched, inside == 1, inside == degree[i])
        found.append(masks[ok])
    return np.concatenate(found) if found else np.zeros(0, dtype=np.int64)


def _edges_of(graph: DimGraph, vertices: List[int], mask: int) -> List[Edge]:
    side = {v for i, v in enumerate(vertices) if mask >> i & 1}
    return [(u, v) for u, v in graph.edges() if u in side and v in side]


def brute_force(
    graph: DimGraph,
    mode: SolveMode = "decide",
    *,
    limit: int = BRUTE_FORCE_MAX_VERTICES,
    matched: Iterable[Vertex] = (),
    independent: Iterable[Vertex] = (),
) -> Optional[Solution]:
    """
    Solves by checking every bipartition of the vertex set.

    A bipartition is accepted when the independent side has no inner edge and the matched side
    induces a 1-regular graph. In decide mode the lowest accepted bitmask wins; in ``min``/``max``
    mode the accepted bipartition of least/greatest weight (lowest bitmask among equals).
    Optimisation on an unweighted graph uses unit weights.
    ``matched`` and ``independent`` pin vertices to a side, so a labeled search state can be solved.

    Args:
        graph: The graph to solve
        mode: ``decide``, ``min`` or ``max``
        limit: Largest vertex count accepted
        matched: Vertices that must be covered by the matching
        independent: Vertices that must stay uncovered

    Returns:
        Optional[Solution]: A solution, or None when none exists

    Raises:
        OracleUsageError: If the graph has more than ``limit`` vertices, or a pinned vertex is not in it
    """
    if len(graph) > limit:
        raise OracleUsageError(f"Brute force is limited to {limit} vertices, got {len(graph)}")
    if mode != "decide" and not graph.weighted:
        graph = graph.with_unit_weights()
    vertices = graph.vertices()
    masks = _feasible_masks(graph)
    index = {v: i for i, v in enumerate(vertices)}
    matched, independent = set(matched), set(independent)
    unknown = sorted(matched.union(independent).difference(index))
    if unknown:
        raise OracleUsageError(f"Pinned vertices not in the graph: {unknown[:5]}")
    must_m = sum(1 << index[v] for v in matched)
    must_i = sum(1 << index[v] for v in independent)
    if must_m & must_i:
        return None
    if must_m or must_i:
        masks = masks[((masks & must_m) == must_m) & ((masks & must_i) == 0)]
    logger.debug("Brute force found %d feasible bipartitions of %d vertices", len(masks), len(vertices))
    if len(masks) == 0:
        return None
    if mode == "decide":
        edges = _edges_of(graph, vertices, int(masks[0]))
        return Solution(edges=frozenset(edges), total_weight=graph.total_weight(edges))
    best: Optional[Solution] = None
    for mask in masks.tolist():
        edges = _edges_of(graph, vertices, mask)
        candidate = Solution(edges=frozenset(edges), total_weight=graph.total_weight(edges))
        if best is None:
            best = candidate
        elif mode == "max" and candidate.total_weight > best.total_weight:
            best = candidate
        elif mode == "min" and candidate.total_weight < best.total_weight:
            best = candidate
    return best


def _edge_form(graph: DimGraph, chosen: Set[Edge]) -> str:
    covered = {}
    for e in sorted(chosen):
        for v in e:
            if v in covered:
                return f"vertex {v} is on two matching edges {covered[v]} and {e}"
            covered[v] = e
    for u, v in graph.edges():
        if (u, v) in chosen:
            continue
        touching = {covered[x] for x in (u, v) if x in covered}
        if len(touching) == 2:
            return f"edge {u}-{v} joins matching edges {sorted(touching)}"
        if not touching:
            return f"edge {u}-{v} is not dominated"
    return ""


def _partition_form(graph: DimGraph, chosen: Set[Edge]) -> str:
    side = {v for e in chosen for v in e}
    for v in graph.vertices():
        inside = sum(1 for w in graph.neighbors(v) if w in side)
        if v in side and inside != 1:
            return f"matched vertex {v} has {inside} matched neighbors"
        if v not in side and inside != graph.degree(v):
            return f"independent vertex {v} has an independent neighbor"
    return ""


def verify(graph: DimGraph, edges: Iterable[Edge] | Solution, total: Optional[Weight] = None) -> Verdict:
    """
    Checks a certificate against both definitions of a dominating induced matching.

    The edge form requires a matching, induced, dominating every other edge exactly once; the
    partition form requires the matched vertices to induce a 1-regular graph and the rest to be
    independent. Both are evaluated and must agree.

    Args:
        graph: The graph
        edges: The certificate, as an edge collection or a ``Solution``
        total: Claimed total weight; compared only on weighted graphs. Defaults to the solution's total
            when a ``Solution`` is given

    Returns:
        Verdict: Acceptance, reason and recomputed weight

    Raises:
        OracleUsageError: If a certificate edge is not in the graph
    """
    if isinstance(edges, Solution):
        total = edges.total_weight if total is None else total
        edges = edges.edges
    chosen = {edge_key(u, v) for u, v in edges}
    foreign = sorted(e for e in chosen if e[0] not in graph or e[1] not in graph or not graph.has_edge(*e))
    if foreign:
        raise OracleUsageError(f"Certificate edges not in the graph: {foreign[:5]}")
    weight = graph.total_weight(chosen)
    by_edges = _edge_form(graph, chosen)
    by_partition = _partition_form(graph, chosen)
    if bool(by_edges) != bool(by_partition):
        raise RuntimeError(f"Certificate checks disagree: {by_edges or 'accept'} / {by_partition or 'accept'}")
    if by_edges:
        return Verdict(accepted=False, reason=by_edges, weight=weight)
    if total is not None and graph.weighted and not same_weight(total, weight):
        return Verdict(accepted=False, reason=f"claimed weight {total} but edges weigh {weight}", weight=weight)
    return Verdict(accepted=True, weight=weight)
