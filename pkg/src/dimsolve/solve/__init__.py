from ..models import Solution, SolveStats
from ..reduce import ReconstructionError
from ._base_case import solve_base
from ._reconstruct import reconstruct
from ._solver import Solver, decompose, solve, split_components

__all__ = [
    "ReconstructionError",
    "Solution",
    "SolveStats",
    "Solver",
    "decompose",
    "reconstruct",
    "solve",
    "solve_base",
    "split_components",
]
