import logging
import os
from pathlib import Path
from typing import Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, RootModel

from .gen import assign_random_weights, gen_gnp, gen_planted, gen_regular
from .graph import DimGraph
from .models import format_weight
from .settings import SolveMode, SolverSettings
from .solve import Solver

logger = logging.getLogger(__name__)

GeneratorKind = Literal["planted", "gnp", "regular"]


class BenchCase(BaseModel):
    """
    One family of generated instances.

    ``params`` are the keyword arguments of the generator without the seed, e.g.
    ``{"n_matched": 20, "n_independent": 10, "edge_prob": 0.3}`` for ``planted``.
    """

    name: str
    generator: GeneratorKind
    params: Dict[str, float | int] = Field(default_factory=dict)
    seeds: List[int] = Field(default_factory=lambda: [0])
    mode: SolveMode = "decide"
    weights: Optional[Tuple[int, int]] = Field(default=None, description="Random integer weight range")


class BenchSuite(BaseModel):
    """A list of benchmark cases, loaded from a JSON file."""
    cases: List[BenchCase]


class BenchResult(BaseModel):
    """Outcome of one solve within a suite."""

    case: str
    seed: int
    n: int
    m: int
    answer: Literal["YES", "NO"]
    total_weight: Optional[str] = None
    nodes: int
    leaves: int
    seconds: float


BenchResults = RootModel[List[BenchResult]]


def generate(kind: GeneratorKind, params: Dict[str, float | int], seed: int) -> DimGraph:
    """Dispatches to the generator named ``kind``."""
    if kind == "planted":
        return gen_planted(int(params["n_matched"]), int(params["n_independent"]), float(params["edge_prob"]), seed)
    if kind == "gnp":
        return gen_gnp(int(params["n"]), float(params["p"]), seed)
    return gen_regular(int(params["n"]), int(params["d"]), seed)


def load_suite(path: os.PathLike | str) -> BenchSuite:
    """Reads and validates a suite file."""
    return BenchSuite.model_validate_json(Path(path).read_text(encoding="utf-8"))


def run_suite(suite: BenchSuite, settings: Optional[SolverSettings] = None) -> List[BenchResult]:
    """
    Generates and solves every (case, seed) pair of a suite in order.

    Args:
        suite: The suite
        settings: Base solver settings; each case overrides the mode

    Returns:
        List[BenchResult]: One result per solve
    """
    base = settings if settings is not None else SolverSettings()
    results: List[BenchResult] = []
    for case in suite.cases:
        for seed in case.seeds:
            graph = generate(case.generator, case.params, seed)
            if case.weights is not None:
                graph = assign_random_weights(graph, *case.weights, seed=seed)
            solution, stats = Solver(base, mode=case.mode).solve(graph)
            results.append(
                BenchResult(
                    case=case.name,
                    seed=seed,
                    n=len(graph),
                    m=graph.number_of_edges(),
                    answer="YES" if solution is not None else "NO",
                    total_weight=format_weight(solution.total_weight) if solution is not None else None,
                    nodes=stats.nodes,
                    leaves=stats.leaves,
                    seconds=stats.wall_time_s,
                )
            )
            logger.info("Bench %s seed %d: %s in %.3fs", case.name, seed, results[-1].answer, stats.wall_time_s)
    return results
