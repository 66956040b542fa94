from ._fixpoint import check_reduced_structure, check_rule_step, reduce_pseudo, reduce_to_fixpoint, strip_decided
from ._propagate import propagate
from ._records import (
    ChainRecord,
    EdgeDeletionRecord,
    ReconstructionError,
    RewriteRecord,
    SixCycleRecord,
    SmallRecord,
    StripRecord,
    TailRecord,
)
from ._reducibility import Reducibility, classify_reducibility, structural_reducibility, trial
from ._rules import Rule, RuleInconsistencyError
from ._structural import apply_structural_rules

__all__ = [
    "ChainRecord",
    "EdgeDeletionRecord",
    "ReconstructionError",
    "Reducibility",
    "RewriteRecord",
    "Rule",
    "RuleInconsistencyError",
    "SixCycleRecord",
    "SmallRecord",
    "StripRecord",
    "TailRecord",
    "apply_structural_rules",
    "check_reduced_structure",
    "check_rule_step",
    "classify_reducibility",
    "propagate",
    "reduce_pseudo",
    "reduce_to_fixpoint",
    "strip_decided",
    "structural_reducibility",
    "trial",
]
