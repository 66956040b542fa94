import logging
from fractions import Fraction
from typing import Dict, List, Optional

import networkx as nx
import numpy as np

from ..constants import DimError
from ..graph import DimGraph, Edge, edge_key

logger = logging.getLogger(__name__)

#: Resampling attempts before a disconnected planted graph is returned as is.
PLANTED_CONNECT_ATTEMPTS = 64


class GeneratorUsageError(DimError, ValueError):
    """Raised for generator parameters that describe no graph."""


def _check_probability(p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise GeneratorUsageError(f"Edge probability must lie in [0, 1], got {p}")


def _from_networkx(graph: nx.Graph) -> DimGraph:
    """Shifts networkx's 0-based ids to 1..n."""
    edges = [(u + 1, v + 1) for u, v in graph.edges()]
    return DimGraph.from_edges(graph.number_of_nodes(), edges)


def gen_planted(n_matched: int, n_independent: int, edge_prob: float, seed: Optional[int] = None) -> DimGraph:
    """
    Builds a yes-instance around a planted dominating induced matching.

    The matched side is a perfect matching on ``n_matched`` vertices and the independent side has
    ``n_independent`` vertices; each of the ``n_matched * n_independent`` cross edges is present
    with probability ``edge_prob``. No other edges exist, so the planted matching is a solution of
    every draw. Draws are repeated until the graph is connected, for a bounded number of attempts.
    Vertex ids are finally shuffled so they carry no hint of the planted side.

    Args:
        n_matched: Size of the matched side; must be even
        n_independent: Size of the independent side
        edge_prob: Probability of each cross edge
        seed: Seed of the numpy generator

    Returns:
        DimGraph: The graph, with the planted matching stored on ``graph.planted``

    Raises:
        GeneratorUsageError: If ``n_matched`` is odd or negative, or a parameter is out of range
    """
    if n_matched < 0 or n_matched % 2:
        raise GeneratorUsageError(f"The matched side needs an even, non-negative size, got {n_matched}")
    if n_independent < 0:
        raise GeneratorUsageError(f"Negative independent side size {n_independent}")
    _check_probability(edge_prob)
    rng = np.random.default_rng(seed)
    n = n_matched + n_independent
    pairs = [(i, i + 1) for i in range(1, n_matched + 1, 2)]
    matched = np.arange(1, n_matched + 1)
    independent = np.arange(n_matched + 1, n + 1)

    cross: List[Edge] = []
    for attempt in range(1, PLANTED_CONNECT_ATTEMPTS + 1):
        present = rng.random((n_independent, n_matched)) < edge_prob
        rows, cols = np.nonzero(present)
        cross = [(int(independent[r]), int(matched[c])) for r, c in zip(rows, cols)]
        probe = nx.Graph()
        probe.add_nodes_from(range(1, n + 1))
        probe.add_edges_from(pairs)
        probe.add_edges_from(cross)
        if n == 0 or nx.is_connected(probe):
            break
        logger.debug("Planted draw %d is disconnected", attempt)
    else:
        logger.info("No connected planted graph after %d draws; keeping the last one", PLANTED_CONNECT_ATTEMPTS)

    relabel = {old: int(new) for old, new in zip(range(1, n + 1), rng.permutation(n) + 1)}
    edges = [(relabel[u], relabel[v]) for u, v in pairs + cross]
    graph = DimGraph.from_edges(n, edges)
    graph.planted = frozenset(edge_key(relabel[u], relabel[v]) for u, v in pairs)
    return graph


def gen_gnp(n: int, p: float, seed: Optional[int] = None) -> DimGraph:
    """Erdős–Rényi G(n, p) on vertices 1..n."""
    if n < 0:
        raise GeneratorUsageError(f"Negative vertex count {n}")
    _check_probability(p)
    return _from_networkx(nx.gnp_random_graph(n, p, seed=seed))


def gen_regular(n: int, d: int, seed: Optional[int] = None) -> DimGraph:
    """
    Uniform random ``d``-regular graph on vertices 1..n.

    Raises:
        GeneratorUsageError: If ``n * d`` is odd or ``d`` is not below ``n``
    """
    if n < 0 or d < 0:
        raise GeneratorUsageError(f"Vertex count and degree must be non-negative, got n={n}, d={d}")
    if (n * d) % 2 or (n > 0 and d >= n):
        raise GeneratorUsageError(f"No simple {d}-regular graph on {n} vertices")
    graph = _from_networkx(nx.random_regular_graph(d, n, seed=seed))
    graph.validate()
    return graph


def assign_random_weights(graph: DimGraph, low: int, high: int, seed: Optional[int] = None) -> DimGraph:
    """
    Returns a weighted copy of ``graph`` with independent uniform integer weights in ``[low, high]``.

    Edges are weighted in sorted order, so the result depends only on the graph and the seed.
    """
    if low > high:
        raise GeneratorUsageError(f"Empty weight range [{low}, {high}]")
    edges = graph.edges()
    draws = np.random.default_rng(seed).integers(low, high, size=len(edges), endpoint=True)
    weights: Dict[Edge, Fraction] = {e: Fraction(int(w)) for e, w in zip(edges, draws)}
    weighted = DimGraph(graph.vertices(), edges, weights, exact=graph.exact)
    weighted.planted = graph.planted
    return weighted
