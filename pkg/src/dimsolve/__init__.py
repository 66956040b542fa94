import logging
from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("dimsolve")
except PackageNotFoundError:
    __version__ = "0.0.0"

from . import logging_helper
from .graph import DimGraph
from .instance import Instance, Label
from .models import Solution, SolveStats
from .oracle import brute_force, verify
from .settings import SolverSettings
from .solve import Solver, solve

logger = logging.getLogger(__name__)

logging.basicConfig(
    level=logging.INFO,
    format=logging_helper.log_fmt,
    datefmt=logging_helper.datetime_fmt,
    handlers=[logging_helper.rich_handler],
)

__all__ = [
    "DimGraph",
    "Instance",
    "Label",
    "Solution",
    "SolveStats",
    "Solver",
    "SolverSettings",
    "brute_force",
    "solve",
    "verify",
]
