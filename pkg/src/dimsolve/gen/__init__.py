from ._base import GeneratorUsageError, assign_random_weights, gen_gnp, gen_planted, gen_regular

__all__ = [
    "GeneratorUsageError",
    "assign_random_weights",
    "gen_gnp",
    "gen_planted",
    "gen_regular",
]
