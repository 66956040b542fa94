import abc
import logging
from fractions import Fraction
from typing import FrozenSet, Literal, Set

from pydantic import BaseModel, ConfigDict

from ..constants import DimError
from ..graph import ZERO, Edge, Vertex, edge_key

logger = logging.getLogger(__name__)


class ReconstructionError(DimError, RuntimeError):
    """Raised when a solution of a rewritten instance does not fit the rewrite that produced it."""


class RewriteRecord(BaseModel, abc.ABC):
    """
    Undo information of one graph rewrite.

    ``lift`` maps the edge set of a solution of the rewritten instance to a solution of the instance
    before the rewrite. ``offset`` is the weight the rewrite took out of the instance; the total of the
    lifted solution is the reduced total plus the offset.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    kind: str
    offset: Fraction | float = ZERO

    @abc.abstractmethod
    def lift(self, edges: Set[Edge]) -> Set[Edge]:
        """Returns the edge set of the pre-rewrite solution."""


class StripRecord(RewriteRecord):
    """Decided vertices removed before decomposition; their matched pairs are already fixed."""

    kind: Literal["strip"] = "strip"
    removed: FrozenSet[Vertex]
    pairs: FrozenSet[Edge]

    def lift(self, edges: Set[Edge]) -> Set[Edge]:
        """Adds the stripped matching edges."""
        clash = {v for e in edges for v in e}.intersection(self.removed)
        if clash:
            raise ReconstructionError(f"Solution touches stripped vertices {sorted(clash)}")
        return set(edges).union(self.pairs)


class EdgeDeletionRecord(RewriteRecord):
    """An edge removed by rule 8 or 9. It joins an M-side and an I-side vertex in every solution."""

    kind: Literal["edge-deletion"] = "edge-deletion"
    rule: str
    edge: Edge

    def lift(self, edges: Set[Edge]) -> Set[Edge]:
        """Deleted edges never carry matching edges; the solution is unchanged."""
        return set(edges)


class SixCycleRecord(RewriteRecord):
    """
    Rule 10: the degree-2 path ``v1 v2 v3`` of a 6-cycle ``v1..v6`` was deleted.

    Weights of ``v4v5`` and ``v5v6`` absorbed those of ``v1v2`` and ``v2v3``.
    """

    kind: Literal["six-cycle"] = "six-cycle"
    cycle: tuple[Vertex, Vertex, Vertex, Vertex, Vertex, Vertex]

    def lift(self, edges: Set[Edge]) -> Set[Edge]:
        """Replaces the folded edge at the hub by the matching edge of the removed path."""
        v1, v2, v3, v4, v5, v6 = self.cycle
        if edge_key(v4, v5) in edges:
            return set(edges) | {edge_key(v1, v2)}
        if edge_key(v5, v6) in edges:
            return set(edges) | {edge_key(v2, v3)}
        raise ReconstructionError(f"Neither {v4}-{v5} nor {v5}-{v6} is matched below the six-cycle record")


class ChainRecord(RewriteRecord):
    """
    Rule 11: the chain ``v1 v2 v3 v4`` was contracted into ``merged``.

    Attributes:
        chain: The contracted path
        merged: Id of the new vertex
        side_a: Former neighbors of ``v1`` other than ``v2``
        side_b: Former neighbors of ``v4`` other than ``v3``
    """

    kind: Literal["chain"] = "chain"
    chain: tuple[Vertex, Vertex, Vertex, Vertex]
    merged: Vertex
    side_a: FrozenSet[Vertex]
    side_b: FrozenSet[Vertex]

    def lift(self, edges: Set[Edge]) -> Set[Edge]:
        """Expands the merged vertex back into the chain."""
        v1, v2, v3, v4 = self.chain
        at_merged = [e for e in edges if self.merged in e]
        if len(at_merged) != 1:
            raise ReconstructionError(f"Merged vertex {self.merged} is matched {len(at_merged)} times")
        (edge,) = at_merged
        c = edge[0] if edge[1] == self.merged else edge[1]
        lifted = set(edges) - {edge}
        if c in self.side_b:
            return lifted | {edge_key(v4, c), edge_key(v1, v2)}
        if c in self.side_a:
            return lifted | {edge_key(v1, c), edge_key(v3, v4)}
        raise ReconstructionError(f"Vertex {c} was not a neighbor of chain {list(self.chain)}")


class TailRecord(RewriteRecord):
    """
    Rule 12: the tail ``N[center]`` hanging on the single edge ``exit_neighbor - exit_vertex`` was deleted.

    ``fallback`` is the lightest other neighbor of ``center``; ``offset`` is the weight of
    ``center - exit_neighbor``.
    """

    kind: Literal["tail"] = "tail"
    center: Vertex
    exit_neighbor: Vertex
    exit_vertex: Vertex
    fallback: Vertex

    def lift(self, edges: Set[Edge]) -> Set[Edge]:
        """Puts back the matching edge of the removed tail."""
        covered = {v for e in edges for v in e}
        partner = self.fallback if self.exit_vertex in covered else self.exit_neighbor
        return set(edges) | {edge_key(self.center, partner)}


class SmallRecord(RewriteRecord):
    """Rule 13: ``chosen`` was moved to M as partner of ``center``. The labels already carry the edge."""

    kind: Literal["small"] = "small"
    center: Vertex
    chosen: Vertex

    def lift(self, edges: Set[Edge]) -> Set[Edge]:
        """Adds the edge chosen at the center."""
        return set(edges)
