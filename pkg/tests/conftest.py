import logging

import pytest

from dimsolve import settings
from dimsolve.graph import DimGraph
from dimsolve.instance import Instance

from . import cycle


@pytest.fixture(autouse=True)
def isolated_settings(monkeypatch):
    """Keep user config files and DIM_* variables out of the tests."""
    monkeypatch.setattr(settings, "KNOWN_CONFIG_FILES", [])
    for name in (
        "DIM_MODE",
        "DIM_THREADS",
        "DIM_DEBUG_ASSERT",
        "DIM_EXACT_WEIGHTS",
        "DIM_BASE_CASE_SIZE",
        "DIM_BRUTE_FORCE_LIMIT",
    ):
        monkeypatch.delenv(name, raising=False)


@pytest.fixture
def c6() -> DimGraph:
    return cycle(6)


@pytest.fixture
def c4() -> DimGraph:
    return cycle(4)


@pytest.fixture
def c6_weighted() -> DimGraph:
    # matchings: {12,45} = 5, {23,56} = -1/2, {34,61} = 9
    return DimGraph.from_edges(
        6,
        [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 6)],
        {(1, 2): 3, (2, 3): "1/2", (3, 4): 4, (4, 5): 2, (5, 6): -1, (1, 6): 5},
    )


@pytest.fixture
def star_instance() -> Instance:
    """K_{1,3} with center 1."""
    return Instance(DimGraph.from_edges(4, [(1, 2), (1, 3), (1, 4)]))


@pytest.fixture
def logging_enabled():
    """Lifts the suite-wide logging.disable for one test."""
    logging.disable(logging.NOTSET)
    yield
    logging.disable(logging.CRITICAL)
