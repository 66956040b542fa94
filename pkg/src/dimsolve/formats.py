"""
Text formats for graphs and certificates.

Graph files are DIMACS-like and 1-indexed::

    c comment
    p dim <n> <m>
    e <u> <v> [weight]

Weights are integers, ``num/den`` rationals or decimals, and must be on every edge or on none.

Certificates list one ``m <u> <v>`` line per matching edge and an optional ``w <total>`` line.
A leading ``YES`` status line and ``c`` comments are ignored, so solver output is a valid
certificate file.
"""

import logging
import os
from fractions import Fraction
from pathlib import Path
from typing import Dict, FrozenSet, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from .constants import DimError
from .graph import DimGraph, Edge, Weight, edge_key
from .models import Solution, format_weight

logger = logging.getLogger(__name__)


class DimFormatError(DimError, ValueError):
    """Raised for malformed graph or certificate text; ``line`` is the 1-based line number, if known."""

    def __init__(self, message: str, line: Optional[int] = None) -> None:
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class Certificate(BaseModel):
    """A parsed certificate: the claimed matching and, optionally, its claimed total."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    edges: FrozenSet[Edge] = frozenset()
    total: Optional[Fraction] = None


def _int(token: str, lineno: int, what: str) -> int:
    try:
        return int(token)
    except ValueError as exc:
        raise DimFormatError(f"{what} {token!r} is not an integer", lineno) from exc


def _weight(token: str, lineno: int) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise DimFormatError(f"weight {token!r} is not a rational number", lineno) from exc


def _parse_header(tokens: List[str], lineno: int) -> Tuple[int, int]:
    if len(tokens) != 4 or tokens[1] != "dim":
        raise DimFormatError("expected 'p dim <n> <m>'", lineno)
    n, m = _int(tokens[2], lineno, "vertex count"), _int(tokens[3], lineno, "edge count")
    if n < 0 or m < 0:
        raise DimFormatError("negative count in the problem line", lineno)
    return n, m


def _parse_edge(tokens: List[str], lineno: int, n: int) -> Tuple[Edge, Optional[Fraction]]:
    if len(tokens) not in (3, 4):
        raise DimFormatError("expected 'e <u> <v> [weight]'", lineno)
    u, v = _int(tokens[1], lineno, "vertex"), _int(tokens[2], lineno, "vertex")
    for x in (u, v):
        if not 1 <= x <= n:
            raise DimFormatError(f"vertex {x} outside 1..{n}", lineno)
    if u == v:
        raise DimFormatError(f"self-loop on vertex {u}", lineno)
    return edge_key(u, v), _weight(tokens[3], lineno) if len(tokens) == 4 else None


def parse_graph(text: str, *, exact: bool = True) -> DimGraph:
    """
    Parses a graph file.

    Args:
        text: The file contents
        exact: Keep weights as ``Fraction`` (True) or convert them to ``float``

    Returns:
        DimGraph: The graph on vertices ``1..n``

    Raises:
        DimFormatError: On a missing or repeated header, unknown line types, out-of-range vertices,
            loops, repeated edges, mixed weighted and unweighted edges, or an edge count that
            does not match the header
    """
    header: Optional[Tuple[int, int]] = None
    seen: Dict[Edge, int] = {}
    weights: Dict[Edge, Optional[Fraction]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        if tokens[0] == "p":
            if header is not None:
                raise DimFormatError("second problem line", lineno)
            header = _parse_header(tokens, lineno)
            continue
        if tokens[0] != "e":
            raise DimFormatError(f"unknown line type {tokens[0]!r}", lineno)
        if header is None:
            raise DimFormatError("edge before the problem line", lineno)
        key, weight = _parse_edge(tokens, lineno, header[0])
        if key in seen:
            raise DimFormatError(f"edge {key[0]}-{key[1]} repeats line {seen[key]}", lineno)
        if weights and (weight is None) != (next(iter(weights.values())) is None):
            raise DimFormatError("weights must be given on all edges or on none", lineno)
        seen[key] = lineno
        weights[key] = weight
    if header is None:
        raise DimFormatError("missing problem line 'p dim <n> <m>'")
    if len(seen) != header[1]:
        raise DimFormatError(f"header announces {header[1]} edges, found {len(seen)}")
    logger.debug("Parsed graph with %d vertices and %d edges", header[0], len(seen))
    weighted = any(w is not None for w in weights.values())
    return DimGraph.from_edges(header[0], list(seen), weights if weighted else None, exact=exact)


def read_graph(path: os.PathLike | str, *, exact: bool = True) -> DimGraph:
    """Reads and parses a graph file."""
    return parse_graph(Path(path).read_text(encoding="utf-8"), exact=exact)


def format_graph(graph: DimGraph, comments: Optional[List[str]] = None) -> str:
    """
    Renders a graph on vertices ``1..n`` in the graph file format.

    Raises:
        DimFormatError: If the vertex ids are not exactly ``1..n``
    """
    vertices = graph.vertices()
    if vertices != list(range(1, len(vertices) + 1)):
        raise DimFormatError("only graphs on vertices 1..n can be written")
    lines = [f"c {c}" for c in comments or []]
    lines.append(f"p dim {len(vertices)} {graph.number_of_edges()}")
    for u, v in graph.edges():
        suffix = f" {format_weight(graph.weight(u, v))}" if graph.weighted else ""
        lines.append(f"e {u} {v}{suffix}")
    return "\n".join(lines) + "\n"


def write_graph(graph: DimGraph, path: os.PathLike | str, comments: Optional[List[str]] = None) -> None:
    """Writes a graph file."""
    Path(path).write_text(format_graph(graph, comments), encoding="utf-8")


def parse_certificate(text: str) -> Certificate:
    """
    Parses a certificate.

    Raises:
        DimFormatError: On unknown lines, repeated edges or a second total
    """
    edges: Dict[Edge, int] = {}
    total: Optional[Fraction] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c" or tokens == ["YES"]:
            continue
        if tokens[0] == "m" and len(tokens) == 3:
            key = edge_key(_int(tokens[1], lineno, "vertex"), _int(tokens[2], lineno, "vertex"))
            if key in edges:
                raise DimFormatError(f"matching edge {key[0]}-{key[1]} repeats line {edges[key]}", lineno)
            edges[key] = lineno
        elif tokens[0] == "w" and len(tokens) == 2:
            if total is not None:
                raise DimFormatError("second total line", lineno)
            total = _weight(tokens[1], lineno)
        else:
            raise DimFormatError(f"unexpected certificate line {raw.strip()!r}", lineno)
    return Certificate(edges=frozenset(edges), total=total)


def read_certificate(path: os.PathLike | str) -> Certificate:
    """Reads and parses a certificate file."""
    return parse_certificate(Path(path).read_text(encoding="utf-8"))


def format_solution(solution: Optional[Solution], *, with_weight: bool = False) -> str:
    """
    Renders a solver answer: ``YES`` followed by the matching and optionally its total, or ``NO``.
    """
    if solution is None:
        return "NO\n"
    lines = ["YES"]
    lines.extend(f"m {u} {v}" for u, v in sorted(solution.edges))
    if with_weight:
        lines.append(f"w {format_weight(solution.total_weight)}")
    return "\n".join(lines) + "\n"


def claimed_total(certificate: Certificate, graph: DimGraph) -> Optional[Weight]:
    """The certificate's total in the graph's weight mode."""
    if certificate.total is None:
        return None
    return certificate.total if graph.exact else float(certificate.total)
