import dataclasses
import enum
import logging
from collections import ChainMap, deque
from typing import Callable, Deque, Iterable, List, Mapping, MutableMapping, Optional, Sequence, Set, Tuple

from ..constants import DimError
from ..graph import DimGraph, Edge, Vertex, Weight, edge_key
from ..models import Solution

logger = logging.getLogger(__name__)


class InstanceUsageError(DimError, ValueError):
    """Raised when an instance operation is called outside its contract."""


class Label(enum.StrEnum):
    """Search state of a vertex: undecided, matched side or independent side."""

    U = "U"
    M = "M"
    I = "I"  # noqa: E741


@dataclasses.dataclass(frozen=True)
class Violation:
    """
    A failed Basic Condition.

    Attributes:
        condition: 1 (I not independent), 2 (M-vertex with two M-neighbors), 3 (M0-vertex without U-neighbor)
            or 0 for a U-vertex that fails both trial moves
        witness: Vertices exhibiting the failure
    """

    condition: int
    witness: Tuple[Vertex, ...]

    def __str__(self) -> str:
        if self.condition == 0:
            return f"vertex {self.witness[0]} fits neither side"
        return f"basic condition {self.condition} fails at {list(self.witness)}"


class Labeling:
    """
    Per-vertex labels plus a cached count of M-labeled neighbors.

    M0 and M1 are derived from the counter and never stored. A labeling can be forked cheaply: the
    fork layers an empty dict over its parent's maps, so trial propagations only pay for what they
    touch.
    """

    def __init__(
        self,
        state: MutableMapping[Vertex, Label],
        m_count: MutableMapping[Vertex, int],
    ) -> None:
        self.state = state
        self.m_count = m_count

    @classmethod
    def undecided(cls, vertices: Iterable[Vertex]) -> "Labeling":
        """All vertices labeled U."""
        vs = list(vertices)
        return cls({v: Label.U for v in vs}, {v: 0 for v in vs})

    def copy(self) -> "Labeling":
        """Independent copy of the labels and counts."""
        return Labeling(dict(self.state), dict(self.m_count))

    def fork(self) -> "Labeling":
        """Copy-on-write child sharing this labeling's maps as a read-only base."""
        return Labeling(ChainMap({}, self.state), ChainMap({}, self.m_count))


class Instance:
    """
    A search state ``(G, M, I)``: graph, labels, rewrite trace and propagation worklist.

    The worklist holds vertices whose neighborhood changed since they were last examined by the
    propagation rules. Every mutator below queues what it affects.

    Attributes:
        graph: The current (possibly rewritten) graph
        labels: Labels and M-neighbor counts
        trace: Rewrite records pushed by structural rules, oldest first
        worklist: Vertices pending propagation
        on_rule: Optional callback receiving the name of every applied rule
    """

    def __init__(self, graph: DimGraph, labels: Optional[Labeling] = None) -> None:
        self.graph = graph
        self.labels = labels if labels is not None else Labeling.undecided(graph.vertices())
        self.trace: List = []
        self.worklist: Deque[Vertex] = deque()
        self._queued: Set[Vertex] = set()
        self.on_rule: Optional[Callable[[str], None]] = None

    # -- label queries ----------------------------------------------------------------------------

    def label(self, v: Vertex) -> Label:
        """Current label of ``v``."""
        return self.labels.state[v]

    def is_u(self, v: Vertex) -> bool:
        """True for an undecided vertex."""
        return self.labels.state[v] is Label.U

    def is_m0(self, v: Vertex) -> bool:
        """True for an M-vertex without M-neighbors."""
        return self.labels.state[v] is Label.M and self.labels.m_count[v] == 0

    def is_m1(self, v: Vertex) -> bool:
        """True for an M-vertex with exactly one M-neighbor."""
        return self.labels.state[v] is Label.M and self.labels.m_count[v] == 1

    def _with_label(self, label: Label) -> List[Vertex]:
        state = self.labels.state
        return sorted(v for v in self.graph if state[v] is label)

    def undecided(self) -> List[Vertex]:
        """U-vertices in ascending order."""
        return self._with_label(Label.U)

    def count_undecided(self) -> int:
        """Number of U-vertices."""
        state = self.labels.state
        return sum(1 for v in self.graph if state[v] is Label.U)

    def m_vertices(self) -> List[Vertex]:
        """M-vertices in ascending order."""
        return self._with_label(Label.M)

    def i_vertices(self) -> List[Vertex]:
        """I-vertices in ascending order."""
        return self._with_label(Label.I)

    def m0(self) -> List[Vertex]:
        """M0-vertices in ascending order."""
        return [v for v in self.m_vertices() if self.labels.m_count[v] == 0]

    def m1(self) -> List[Vertex]:
        """M1-vertices in ascending order."""
        return [v for v in self.m_vertices() if self.labels.m_count[v] == 1]

    def u_neighbors(self, v: Vertex) -> List[Vertex]:
        """Undecided neighbors of ``v`` in ascending order."""
        state = self.labels.state
        return sorted(w for w in self.graph.neighbors(v) if state[w] is Label.U)

    # -- mutation ---------------------------------------------------------------------------------

    def enqueue(self, v: Vertex) -> None:
        """Schedules ``v`` for the next propagation pass."""
        if v not in self._queued:
            self._queued.add(v)
            self.worklist.append(v)

    def touch(self, vertices: Iterable[Vertex]) -> None:
        """Queues live, decided vertices for re-examination."""
        state = self.labels.state
        for v in vertices:
            if v in self.graph and state[v] is not Label.U:
                self.enqueue(v)

    def pop_pending(self) -> Optional[Vertex]:
        """Next queued vertex, or None once the worklist is drained."""
        if not self.worklist:
            return None
        v = self.worklist.popleft()
        self._queued.discard(v)
        return v

    def assign(self, v: Vertex, label: Label) -> None:
        """
        Moves a U-vertex to M or I.

        Moving to M bumps the M-neighbor count of every neighbor. The vertex and its decided neighbors
        are queued for propagation.

        Raises:
            InstanceUsageError: If ``v`` is dead, already decided, or ``label`` is U
        """
        if v not in self.graph:
            raise InstanceUsageError(f"Vertex {v} is not live")
        if label is Label.U:
            raise InstanceUsageError("Cannot assign label U")
        if self.labels.state[v] is not Label.U:
            raise InstanceUsageError(f"Vertex {v} is already labeled {self.labels.state[v]}")
        self.labels.state[v] = label
        neighbors = self.graph.neighbors(v)
        if label is Label.M:
            m_count = self.labels.m_count
            for w in neighbors:
                m_count[w] = m_count[w] + 1
        self.enqueue(v)
        self.touch(neighbors)

    def remove_vertices(self, vertices: Iterable[Vertex]) -> None:
        """Deletes vertices from the graph, keeping M-counts consistent and queueing the survivors around them."""
        doomed = set(vertices)
        state, m_count = self.labels.state, self.labels.m_count
        border: Set[Vertex] = set()
        for v in doomed:
            for w in self.graph.neighbors(v):
                if w in doomed:
                    continue
                border.add(w)
                if state[v] is Label.M:
                    m_count[w] = m_count[w] - 1
        self.graph.delete_vertices(doomed)
        for v in doomed:
            del state[v]
            del m_count[v]
        self.touch(sorted(border))

    def delete_edge(self, u: Vertex, v: Vertex) -> None:
        """Deletes edge ``uv`` and updates the M-neighbor counts of its ends."""
        state, m_count = self.labels.state, self.labels.m_count
        self.graph.delete_edge(u, v)
        if state[u] is Label.M:
            m_count[v] -= 1
        if state[v] is Label.M:
            m_count[u] -= 1
        self.touch((u, v))

    def contract(
        self, path: Sequence[Vertex], label: Label, weights: Optional[Mapping[Vertex, Weight]] = None
    ) -> Vertex:
        """
        Contracts ``path`` into a fresh vertex carrying ``label``.

        Args:
            path: Consecutively adjacent live vertices
            label: Label of the merged vertex
            weights: New weight per outside neighbor, forwarded to ``DimGraph.contract_path``

        Returns:
            Vertex: The merged vertex
        """
        state, m_count = self.labels.state, self.labels.m_count
        outside = {w for p in path for w in self.graph.neighbors(p)}.difference(path)
        merged = self.graph.contract_path(path, weights)
        for p in path:
            del state[p]
            del m_count[p]
        state[merged] = label
        for w in [merged, *outside]:
            m_count[w] = sum(1 for x in self.graph.neighbors(w) if state[x] is Label.M)
        self.touch([merged, *sorted(outside)])
        return merged

    def note_rule(self, rule: str) -> None:
        """Reports an applied rule to the ``on_rule`` hook, if any."""
        if self.on_rule is not None:
            self.on_rule(rule)

    # -- checks and answers -----------------------------------------------------------------------

    def check_basic_conditions(self) -> Optional[Violation]:
        """
        Full-scan check of the Basic Conditions.

        Returns:
            Optional[Violation]: None when all three hold, else the first failure in vertex order
        """
        state, m_count = self.labels.state, self.labels.m_count
        for v in self.graph.vertices():
            label = state[v]
            if label is Label.I:
                for w in sorted(self.graph.neighbors(v)):
                    if state[w] is Label.I:
                        return Violation(1, (v, w))
            elif label is Label.M:
                m_nbrs = sorted(w for w in self.graph.neighbors(v) if state[w] is Label.M)
                if len(m_nbrs) >= 2:
                    return Violation(2, (v, *m_nbrs))
                if not m_nbrs and not any(state[w] is Label.U for w in self.graph.neighbors(v)):
                    return Violation(3, (v,))
                if m_count[v] != len(m_nbrs):
                    raise InstanceUsageError(f"Stale M-neighbor count at {v}")
        return None

    def matched_pairs(self) -> List[Edge]:
        """Edges joining two M-vertices, i.e. the already fixed part of the matching."""
        state = self.labels.state
        matched = [v for v in self.graph if state[v] is Label.M]
        return sorted({edge_key(v, w) for v in matched for w in self.graph.neighbors(v) if state[w] is Label.M})

    def final_answer(self) -> Optional[Solution]:
        """
        Reads the answer off a fully decided instance.

        Returns:
            Optional[Solution]: The edges inside M with their weight when the Basic Conditions hold, else None

        Raises:
            InstanceUsageError: If U-vertices remain
        """
        if self.count_undecided():
            raise InstanceUsageError("final_answer needs an instance without U-vertices")
        if self.check_basic_conditions() is not None:
            return None
        pairs = self.matched_pairs()
        return Solution(edges=frozenset(pairs), total_weight=self.graph.total_weight(pairs))

    # -- copies -----------------------------------------------------------------------------------

    def copy(self) -> "Instance":
        """Deep copy: graph, labels, trace and worklist."""
        clone = Instance(self.graph.copy(), self.labels.copy())
        clone.trace = list(self.trace)
        clone.worklist = deque(self.worklist)
        clone._queued = set(self._queued)
        clone.on_rule = self.on_rule
        return clone

    def branch(self, v: Vertex, label: Label) -> "Instance":
        """Independent child with ``v`` assigned and an empty trace of its own."""
        child = Instance(self.graph.copy(), self.labels.copy())
        child.on_rule = self.on_rule
        child.assign(v, label)
        return child

    def fork_labels(self) -> "Instance":
        """
        Scratch instance for trial propagation.

        The graph is shared and must not be edited through the fork; labels are copy-on-write.
        """
        trial = Instance.__new__(Instance)
        trial.graph = self.graph
        trial.labels = self.labels.fork()
        trial.trace = []
        trial.worklist = deque()
        trial._queued = set()
        trial.on_rule = None
        return trial

    def subinstance(self, vertices: Iterable[Vertex]) -> "Instance":
        """
        Induced sub-instance on ``vertices`` with recomputed M-counts and a fresh trace.

        Every decided vertex of the result is queued, so the first propagation re-examines it.
        """
        keep = sorted(vertices)
        graph = self.graph.subgraph_copy(keep)
        state = {v: self.labels.state[v] for v in keep}
        m_count = {v: sum(1 for w in graph.neighbors(v) if state[w] is Label.M) for v in keep}
        child = Instance(graph, Labeling(state, m_count))
        child.on_rule = self.on_rule
        child.touch(keep)
        return child

    def describe(self) -> str:
        """Compact reproducer: edges, weights and non-U labels."""
        parts = [f"n={len(self.graph)}", f"edges={self.graph.edges()}"]
        if self.graph.weighted:
            parts.append(f"weights={[str(self.graph.weight(u, v)) for u, v in self.graph.edges()]}")
        decided = {v: str(self.labels.state[v]) for v in self.graph.vertices() if not self.is_u(v)}
        parts.append(f"labels={decided}")
        return " ".join(parts)
