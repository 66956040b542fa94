from ._select import BranchChoice, BranchStep, BranchUsageError, earliest_step, select_branch_vertex

__all__ = [
    "BranchChoice",
    "BranchStep",
    "BranchUsageError",
    "earliest_step",
    "select_branch_vertex",
]
