import logging
import math
from fractions import Fraction
from typing import Callable, Iterable, Iterator, List, Mapping, Optional, Sequence, Set, TypeAlias

import networkx as nx

from ..constants import DimError

logger = logging.getLogger(__name__)

Vertex: TypeAlias = int
Edge: TypeAlias = tuple[int, int]
Weight: TypeAlias = Fraction | float
VertexPredicate: TypeAlias = Callable[[int], bool]

ZERO = Fraction(0)

_CYCLE_LENGTHS = (3, 4, 5, 6)
_MAX_LAYER = 3


class GraphUsageError(DimError, ValueError):
    """Raised when a graph operation references dead vertices, missing edges or invalid arguments."""


class GraphIntegrityError(DimError, RuntimeError):
    """Raised by the full-scan validator when the graph stopped being simple or consistent."""


class RulePreconditionError(DimError, RuntimeError):
    """Raised when a structural edit would break simplicity (self-loops, weighted parallel edges)."""


def edge_key(u: Vertex, v: Vertex) -> Edge:
    """Returns the canonical (low, high) form of an undirected edge."""
    return (u, v) if u < v else (v, u)


def same_weight(a: Weight, b: Weight) -> bool:
    """Exact comparison for rationals, relative tolerance once a float is involved."""
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a == b
    return math.isclose(float(a), float(b), rel_tol=1e-9, abs_tol=1e-9)


class DimGraph:
    """
    Mutable undirected simple graph with stable integer vertex ids and optional edge weights.

    Deleted vertices are tombstoned: their ids are retired and never handed out again, so ids cited
    by rewrite records stay meaningful until the solve that produced them finishes. Fresh ids (for
    contracted vertices) always exceed every id the graph has ever held.

    Weights are exact ``Fraction`` values by default; with ``exact=False`` they are floats. An
    unweighted graph reports a zero weight for every edge.

    Example:
        ```python
        g = DimGraph.from_edges(3, [(1, 2), (2, 3)])
        g.neighbors_k(2, 1)  # {1, 3}
        ```
    """

    def __init__(
        self,
        vertices: Iterable[Vertex] = (),
        edges: Iterable[Edge] = (),
        weights: Optional[Mapping[Edge, float | int | str | Fraction]] = None,
        *,
        exact: bool = True,
    ) -> None:
        self._g = nx.Graph()
        self._g.add_nodes_from(vertices)
        self._retired: Set[Vertex] = set()
        self.exact = exact
        self.weighted = weights is not None
        self.planted: Optional[frozenset[Edge]] = None
        for u, v in edges:
            if u == v:
                raise GraphUsageError(f"Self-loop on vertex {u}")
            if u not in self._g or v not in self._g:
                raise GraphUsageError(f"Edge {u}-{v} references an unknown vertex")
            if self._g.has_edge(u, v):
                raise GraphUsageError(f"Parallel edge {u}-{v}")
            if weights is None:
                self._g.add_edge(u, v)
                continue
            key = edge_key(u, v)
            if key not in weights:
                raise GraphUsageError(f"Edge {u}-{v} has no weight in a weighted graph")
            self._g.add_edge(u, v, weight=self._coerce(weights[key]))
        if weights is not None:
            extra = [e for e in weights if not self._g.has_edge(*e)]
            if extra:
                raise GraphUsageError(f"Weights given for missing edges: {sorted(extra)[:5]}")
        self._next_id = max(self._g.nodes, default=0) + 1

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[Edge],
        weights: Optional[Mapping[Edge, float | int | str | Fraction]] = None,
        *,
        exact: bool = True,
    ) -> "DimGraph":
        """
        Builds a graph on the vertices ``1..n``.

        Args:
            n: Number of vertices
            edges: Edge list using 1-indexed vertex ids
            weights: Optional weight per canonical edge; presence switches on weighted mode
            exact: Store weights as ``Fraction`` (True) or ``float`` (False)

        Returns:
            DimGraph: The new graph
        """
        if n < 0:
            raise GraphUsageError(f"Negative vertex count {n}")
        return cls(range(1, n + 1), edges, weights, exact=exact)

    def _coerce(self, value: float | int | str | Fraction) -> Weight:
        try:
            w = Fraction(value)
        except (ValueError, OverflowError, TypeError) as exc:
            raise GraphUsageError(f"Weight {value!r} is not a finite rational") from exc
        return w if self.exact else float(w)

    @property
    def zero(self) -> Weight:
        """The additive identity in this graph's weight mode."""
        return ZERO if self.exact else 0.0

    # -- queries ----------------------------------------------------------------------------------

    def __contains__(self, v: object) -> bool:
        return v in self._g

    def __len__(self) -> int:
        return self._g.number_of_nodes()

    def __iter__(self) -> Iterator[Vertex]:
        return iter(self._g)

    def vertices(self) -> List[Vertex]:
        """Live vertices in ascending order."""
        return sorted(self._g.nodes)

    def edges(self) -> List[Edge]:
        """Live edges in canonical form, sorted."""
        return sorted(edge_key(u, v) for u, v in self._g.edges)

    def number_of_edges(self) -> int:
        """Number of live edges."""
        return self._g.number_of_edges()

    def neighbors(self, v: Vertex) -> Iterable[Vertex]:
        """Read-only view of the neighbors of a live vertex."""
        try:
            return self._g.adj[v]
        except KeyError:
            raise GraphUsageError(f"Vertex {v} is not live") from None

    def degree(self, v: Vertex) -> int:
        """Number of live neighbors of ``v``."""
        return len(self.neighbors(v))  # type: ignore[arg-type]

    def max_degree(self) -> int:
        """Largest degree, 0 for a graph without vertices."""
        return max((d for _, d in self._g.degree), default=0)

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        """True when ``uv`` is a live edge."""
        return self._g.has_edge(u, v)

    def is_retired(self, v: Vertex) -> bool:
        """True when ``v`` was deleted or contracted away."""
        return v in self._retired

    def weight(self, u: Vertex, v: Vertex) -> Weight:
        """Weight of edge ``uv``; zero in unweighted mode."""
        try:
            data = self._g.adj[u][v]
        except KeyError:
            raise GraphUsageError(f"Edge {u}-{v} is not in the graph") from None
        return data["weight"] if self.weighted else self.zero

    def total_weight(self, edges: Iterable[Edge]) -> Weight:
        """Sum of the weights of ``edges``."""
        return sum((self.weight(u, v) for u, v in edges), self.zero)

    def neighbors_k(self, x: Vertex | Edge, k: int) -> Set[Vertex]:
        """
        Vertices at distance exactly ``k`` from a vertex or from an edge.

        For an edge ``ab`` the distance of ``w`` is ``min(d(a, w), d(b, w))``, so ``N_0(ab) = {a, b}``
        and every layer excludes vertices closer to either endpoint.

        Args:
            x: A live vertex or an edge given as a vertex pair
            k: Distance, between 0 and 3

        Returns:
            Set[Vertex]: The k-th breadth-first layer

        Raises:
            GraphUsageError: If ``x`` is dead or missing, or ``k`` is out of range
        """
        if not 0 <= k <= _MAX_LAYER:
            raise GraphUsageError(f"Distance {k} outside 0..{_MAX_LAYER}")
        if isinstance(x, tuple):
            a, b = x
            if not self._g.has_edge(a, b):
                raise GraphUsageError(f"Edge {a}-{b} is not in the graph")
            sources = [a, b]
        else:
            if x not in self._g:
                raise GraphUsageError(f"Vertex {x} is not live")
            sources = [x]
        for depth, layer in enumerate(nx.bfs_layers(self._g, sources)):
            if depth == k:
                return set(layer)
        return set()

    def find_small_cycle(
        self, u: Vertex, length: int, predicate: Optional[VertexPredicate] = None
    ) -> Optional[List[Vertex]]:
        """
        Finds a cycle of exactly ``length`` vertices through ``u``.

        The search is a depth-first walk visiting neighbors in ascending id order, so the result is the
        lexicographically smallest qualifying vertex sequence starting at ``u``.

        Args:
            u: Live start vertex
            length: 3, 4, 5 or 6
            predicate: Optional filter every cycle vertex (``u`` included) must pass

        Returns:
            Optional[List[Vertex]]: The cycle as ``[u, x1, ..., x_{length-1}]`` or None
        """
        if u not in self._g:
            raise GraphUsageError(f"Vertex {u} is not live")
        if length not in _CYCLE_LENGTHS:
            raise GraphUsageError(f"Cycle length {length} not in {_CYCLE_LENGTHS}")
        if predicate is not None and not predicate(u):
            return None
        adj = self._g.adj
        path = [u]
        on_path = {u}

        def _extend() -> bool:
            tail = path[-1]
            if len(path) == length:
                return u in adj[tail]
            for w in sorted(adj[tail]):
                if w in on_path or (predicate is not None and not predicate(w)):
                    continue
                path.append(w)
                on_path.add(w)
                if _extend():
                    return True
                on_path.discard(path.pop())
            return False

        return list(path) if _extend() else None

    def components(self, restrict: Optional[Iterable[Vertex]] = None) -> List[Set[Vertex]]:
        """
        Connected components of the subgraph induced by ``restrict`` (default: all live vertices).

        Returns:
            List[Set[Vertex]]: Components ordered by their minimum vertex id
        """
        if restrict is None:
            view = self._g
        else:
            keep = set(restrict)
            dead = keep.difference(self._g.nodes)
            if dead:
                raise GraphUsageError(f"Restriction contains dead vertices {sorted(dead)[:5]}")
            view = self._g.subgraph(keep)
        return sorted((set(c) for c in nx.connected_components(view)), key=min)

    def component_of(self, v: Vertex) -> Set[Vertex]:
        """Vertex set of the connected component containing ``v``."""
        if v not in self._g:
            raise GraphUsageError(f"Vertex {v} is not live")
        return set(nx.node_connected_component(self._g, v))

    def is_connected(self) -> bool:
        """True for a graph with one component; the empty graph counts as connected."""
        return len(self._g) == 0 or nx.is_connected(self._g)

    # -- edits ------------------------------------------------------------------------------------

    def set_weight(self, u: Vertex, v: Vertex, w: float | int | str | Fraction) -> None:
        """Replaces the weight of edge ``uv``, coerced to the graph's weight mode."""
        if not self.weighted:
            raise GraphUsageError("Cannot set a weight on an unweighted graph")
        if not self._g.has_edge(u, v):
            raise GraphUsageError(f"Edge {u}-{v} is not in the graph")
        self._g.adj[u][v]["weight"] = self._coerce(w)

    def add_weight(self, u: Vertex, v: Vertex, delta: Weight) -> None:
        """Adds ``delta`` to the weight of ``uv``; a no-op on unweighted graphs."""
        if not self.weighted:
            return
        self.set_weight(u, v, self.weight(u, v) + delta)

    def delete_edge(self, u: Vertex, v: Vertex) -> None:
        """Deletes edge ``uv``."""
        if not self._g.has_edge(u, v):
            raise GraphUsageError(f"Edge {u}-{v} is not in the graph")
        self._g.remove_edge(u, v)

    def delete_vertices(self, vertices: Iterable[Vertex]) -> None:
        """Deletes the vertices and their incident edges; their ids are never reused."""
        doomed = list(vertices)
        dead = [v for v in doomed if v not in self._g]
        if dead:
            raise GraphUsageError(f"Cannot delete dead vertices {dead[:5]}")
        self._g.remove_nodes_from(doomed)
        self._retired.update(doomed)

    def contract_path(self, path: Sequence[Vertex], weights: Optional[Mapping[Vertex, Weight]] = None) -> Vertex:
        """
        Replaces the vertices of ``path`` by one fresh vertex adjacent to all their outside neighbors.

        The edit is atomic: every check runs before the graph changes.

        Args:
            path: Consecutively adjacent live vertices
            weights: New weight of the edge to each outside neighbor (weighted mode). When omitted the
                weight of the original edge is kept.

        Returns:
            Vertex: Id of the new vertex

        Raises:
            GraphUsageError: If the path is not a live path or the weights miss a neighbor
            RulePreconditionError: If the path has a chord (the merged vertex would carry a self-loop) or,
                in weighted mode, an outside vertex is adjacent to two path vertices
        """
        if len(path) < 2 or len(set(path)) != len(path):
            raise GraphUsageError(f"Not a simple path: {list(path)}")
        for a, b in zip(path, path[1:]):
            if not self._g.has_edge(a, b):
                raise GraphUsageError(f"Path vertices {a} and {b} are not adjacent")
        inside = set(path)
        position = {v: i for i, v in enumerate(path)}
        outside: dict[Vertex, Weight] = {}
        for p in path:
            for c in self._g.adj[p]:
                if c in inside:
                    if abs(position[c] - position[p]) > 1:
                        raise RulePreconditionError(f"Contracting {list(path)} would create a self-loop via {p}-{c}")
                    continue
                if c in outside:
                    if self.weighted:
                        raise RulePreconditionError(f"Vertex {c} is adjacent to two vertices of {list(path)}")
                    continue
                outside[c] = self.weight(p, c)
        if weights is not None:
            missing = set(outside).difference(weights)
            if self.weighted and missing:
                raise GraphUsageError(f"No weight supplied for neighbors {sorted(missing)}")
            outside.update({c: w for c, w in weights.items() if c in outside})

        new = self._next_id
        self._next_id += 1
        self._g.add_node(new)
        for c, w in outside.items():
            if self.weighted:
                self._g.add_edge(new, c, weight=self._coerce(w))
            else:
                self._g.add_edge(new, c)
        self._g.remove_nodes_from(path)
        self._retired.update(path)
        return new

    # -- whole-graph helpers ----------------------------------------------------------------------

    def validate(self) -> None:
        """
        Full-scan consistency check.

        Raises:
            GraphIntegrityError: On self-loops, asymmetric adjacency, resurrected ids or weight-mode mismatches
        """
        if nx.number_of_selfloops(self._g):
            raise GraphIntegrityError("Graph has self-loops")
        adj = self._g.adj
        for u in adj:
            for v in adj[u]:
                if u not in adj[v]:
                    raise GraphIntegrityError(f"Asymmetric adjacency {u}->{v}")
        back = self._retired.intersection(self._g.nodes)
        if back:
            raise GraphIntegrityError(f"Retired vertices reappeared: {sorted(back)[:5]}")
        if any(v >= self._next_id for v in self._g.nodes):
            raise GraphIntegrityError("Vertex id above the id allocator")
        for u, v, data in self._g.edges(data=True):
            if self.weighted != ("weight" in data):
                raise GraphIntegrityError(f"Edge {u}-{v} weight does not match the weight mode")

    def _clone_with(self, inner: nx.Graph) -> "DimGraph":
        clone = DimGraph.__new__(DimGraph)
        clone._g = inner
        clone._retired = set(self._retired)
        clone.exact = self.exact
        clone.weighted = self.weighted
        clone.planted = self.planted
        clone._next_id = self._next_id
        return clone

    def copy(self) -> "DimGraph":
        """Independent copy; edge attribute dicts are not shared."""
        return self._clone_with(self._g.copy())

    def subgraph_copy(self, vertices: Iterable[Vertex]) -> "DimGraph":
        """Independent copy of the induced subgraph on ``vertices``."""
        keep = set(vertices)
        dead = keep.difference(self._g.nodes)
        if dead:
            raise GraphUsageError(f"Cannot keep dead vertices {sorted(dead)[:5]}")
        return self._clone_with(self._g.subgraph(keep).copy())

    def with_unit_weights(self) -> "DimGraph":
        """Copy of an unweighted graph in which every edge weighs 1."""
        clone = self.copy()
        clone.weighted = True
        for u, v in clone._g.edges:
            clone._g.adj[u][v]["weight"] = clone._coerce(1)
        return clone

    def negated(self) -> "DimGraph":
        """Copy with every weight negated (maximization by minimization)."""
        clone = self.copy()
        if clone.weighted:
            for u, v in clone._g.edges:
                clone._g.adj[u][v]["weight"] = -clone._g.adj[u][v]["weight"]
        return clone

    def to_networkx(self) -> nx.Graph:
        """Independent ``networkx`` copy, weights in the ``weight`` attribute."""
        return self._g.copy()

    def __repr__(self) -> str:
        mode = "weighted" if self.weighted else "unweighted"
        return f"DimGraph(n={len(self)}, m={self.number_of_edges()}, {mode})"
