import logging
import os
import typing as t
from pathlib import Path

logger = logging.getLogger(__name__)

XDG_CONFIG_HOME = os.environ.get("XDG_CONFIG_HOME", str(Path.home() / ".config"))

# The config files will be used in order, with the first one having the highest priority

KNOWN_CONFIG_FILES: t.List[str] = [
    "./local/dimsolve.yml",
    "./dimsolve.yml",
    str(Path(XDG_CONFIG_HOME) / "dimsolve.yml"),
]


for i, p in enumerate(KNOWN_CONFIG_FILES):
    if Path(p).exists():
        logger.debug("Found config file: %s with rank priority %s", p, i)

#: Step 1 threshold on the number of undecided vertices.
BASE_CASE_MAX_UNDECIDED = 6

#: Largest graph the brute-force oracle accepts.
BRUTE_FORCE_MAX_VERTICES = 24

#: Depth bound of the cover-chain search.
MAX_COVER_CHAIN_DEPTH = 8

#: Absolute tolerance on the branching-factor root.
FACTOR_XTOL = 1e-14


class DimError(Exception):
    """Base class of every error raised by dimsolve."""
