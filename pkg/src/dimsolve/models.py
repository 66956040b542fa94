import logging
from collections import Counter
from fractions import Fraction
from typing import Dict, FrozenSet, Optional, Set

from pydantic import BaseModel, ConfigDict, Field, field_serializer, field_validator

from .graph import ZERO, Edge, Vertex, Weight, edge_key

logger = logging.getLogger(__name__)


class Solution(BaseModel):
    """
    A dominating induced matching ``F`` with its total weight.

    Edges are stored in canonical ``(low, high)`` form. The weight is exact unless the solve ran
    in float mode; it is zero for unweighted graphs.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    edges: FrozenSet[Edge] = frozenset()
    total_weight: Fraction | float = ZERO

    @field_validator("edges", mode="after")
    @classmethod
    def _canonical_edges(cls, value: FrozenSet[Edge]) -> FrozenSet[Edge]:
        """Stores every edge as (low, high) and rejects loops."""
        canonical = frozenset(edge_key(u, v) for u, v in value)
        if any(u == v for u, v in canonical):
            raise ValueError("A matching edge cannot be a loop")
        return canonical

    @field_serializer("edges")
    def _serialize_edges(self, value: FrozenSet[Edge]):
        return [list(e) for e in sorted(value)]

    @field_serializer("total_weight")
    def _serialize_weight(self, value: Weight) -> str:
        return format_weight(value)

    def vertices(self) -> Set[Vertex]:
        """V(F): every endpoint of a matched edge."""
        return {v for e in self.edges for v in e}

    def better_than(self, other: Optional["Solution"]) -> bool:
        """True when this solution has strictly smaller weight than ``other`` (or ``other`` is missing)."""
        return other is None or self.total_weight < other.total_weight


def format_weight(value: Weight) -> str:
    """Renders a weight as an integer, ``num/den`` or a float literal."""
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    return repr(float(value))


class EliminationTally(BaseModel):
    """Observed U-vertex eliminations of the two branches at one Step 5 case."""

    branches: int = 0
    min_m: Optional[int] = None
    min_i: Optional[int] = None
    sum_m: int = 0
    sum_i: int = 0

    def add(self, delta_m: Optional[int], delta_i: Optional[int]) -> None:
        """Adds one branching; an infeasible child contributes nothing for its side."""
        self.branches += 1
        if delta_m is not None:
            self.sum_m += delta_m
            self.min_m = delta_m if self.min_m is None else min(self.min_m, delta_m)
        if delta_i is not None:
            self.sum_i += delta_i
            self.min_i = delta_i if self.min_i is None else min(self.min_i, delta_i)

    def merge(self, other: "EliminationTally") -> "EliminationTally":
        """Combined tally of two runs."""
        def _min(a: Optional[int], b: Optional[int]) -> Optional[int]:
            return b if a is None else a if b is None else min(a, b)

        return EliminationTally(
            branches=self.branches + other.branches,
            min_m=_min(self.min_m, other.min_m),
            min_i=_min(self.min_i, other.min_i),
            sum_m=self.sum_m + other.sum_m,
            sum_i=self.sum_i + other.sum_i,
        )


class SolveStats(BaseModel):
    """
    Search-tree counters of one solve.

    ``nodes`` counts solver frames (one per instance handed to the recursive procedure), ``leaves``
    those that ended in a base case or an infeasibility. Merging is associative, so statistics of
    independently solved components can be combined in any order.
    """

    mode: str = "decide"
    nodes: int = 0
    leaves: int = 0
    max_depth: int = 0
    components: int = 0
    rule_counts: Dict[str, int] = Field(default_factory=dict)
    branch_counts: Dict[str, int] = Field(default_factory=dict)
    eliminated: Dict[str, EliminationTally] = Field(default_factory=dict)
    bound_violations: int = 0
    wall_time_s: float = 0.0

    def record_rule(self, rule: str) -> None:
        """Counts one application of ``rule``."""
        key = str(rule)
        self.rule_counts[key] = self.rule_counts.get(key, 0) + 1

    def record_branch(self, step: str) -> None:
        """Counts one branching at case ``step``."""
        key = str(step)
        self.branch_counts[key] = self.branch_counts.get(key, 0) + 1

    def record_elimination(self, step: str, delta_m: Optional[int], delta_i: Optional[int]) -> None:
        """Records the eliminations measured for one branching at case ``step``."""
        self.eliminated.setdefault(str(step), EliminationTally()).add(delta_m, delta_i)

    def merge(self, other: "SolveStats") -> "SolveStats":
        """Returns the combined statistics of two runs."""
        eliminated = dict(self.eliminated)
        for step, tally in other.eliminated.items():
            eliminated[step] = eliminated[step].merge(tally) if step in eliminated else tally
        return SolveStats(
            mode=self.mode,
            nodes=self.nodes + other.nodes,
            leaves=self.leaves + other.leaves,
            max_depth=max(self.max_depth, other.max_depth),
            components=self.components + other.components,
            rule_counts=dict(Counter(self.rule_counts) + Counter(other.rule_counts)),
            branch_counts=dict(Counter(self.branch_counts) + Counter(other.branch_counts)),
            eliminated=eliminated,
            bound_violations=self.bound_violations + other.bound_violations,
            wall_time_s=self.wall_time_s + other.wall_time_s,
        )
