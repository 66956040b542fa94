from ._base import (
    AnalysisUsageError,
    Catalogue,
    CatalogueEntry,
    Recurrence,
    branching_factor,
    combine,
    covers,
    load_catalogue,
    worst_factor,
)

__all__ = [
    "AnalysisUsageError",
    "Catalogue",
    "CatalogueEntry",
    "Recurrence",
    "branching_factor",
    "combine",
    "covers",
    "load_catalogue",
    "worst_factor",
]
