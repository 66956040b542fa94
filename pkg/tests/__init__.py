import itertools
import logging
from fractions import Fraction
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Tuple

from dimsolve.gen import assign_random_weights, gen_gnp, gen_planted, gen_regular
from dimsolve.graph import DimGraph, Edge

REPO_ROOT = Path(__file__).parents[1]

TESTS_ASSETS = REPO_ROOT / "tests" / "assets"

logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())
logging.disable(logging.CRITICAL)


def cycle(n: int, weights: Optional[List[int]] = None) -> DimGraph:
    """C_n on 1..n; ``weights[i]`` is the weight of edge (i+1, i+2 mod n)."""
    edges = [(i, i % n + 1) for i in range(1, n + 1)]
    table = None
    if weights is not None:
        table = {tuple(sorted(e)): Fraction(w) for e, w in zip(edges, weights)}
    return DimGraph.from_edges(n, edges, table)


def path(n: int) -> DimGraph:
    return DimGraph.from_edges(n, [(i, i + 1) for i in range(1, n)])


def complete(n: int) -> DimGraph:
    return DimGraph.from_edges(n, list(itertools.combinations(range(1, n + 1), 2)))


def weighted(n: int, edges: Dict[Edge, int]) -> DimGraph:
    return DimGraph.from_edges(n, list(edges), {tuple(sorted(e)): Fraction(w) for e, w in edges.items()})


def random_corpus(count: int, seed: int = 0, n_range: Tuple[int, int] = (7, 12)) -> Iterator[DimGraph]:
    """Mixed G(n, p), cubic and planted graphs, deterministic in ``seed``."""
    for i in range(count):
        s = seed * 100_003 + i
        n = n_range[0] + s % (n_range[1] - n_range[0] + 1)
        kind = i % 3
        if kind == 0:
            yield gen_gnp(n, (0.15, 0.25, 0.4)[s % 3], seed=s)
        elif kind == 1:
            yield gen_regular(n + n % 2, 3, seed=s)
        else:
            matched = 2 * (n // 3)
            yield gen_planted(matched, n - matched, 0.4, seed=s)


def weighted_corpus(count: int, seed: int = 0, n_range: Tuple[int, int] = (7, 12)) -> Iterator[DimGraph]:
    for i, graph in enumerate(random_corpus(count, seed, n_range)):
        yield assign_random_weights(graph, -10, 10, seed=seed + i)
