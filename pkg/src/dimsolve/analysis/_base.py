import logging
from collections import Counter, deque
from importlib import resources
from typing import Iterator, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator
from scipy.optimize import brentq

from ..constants import FACTOR_XTOL, MAX_COVER_CHAIN_DEPTH, DimError

logger = logging.getLogger(__name__)

CATALOGUE_RESOURCE = "step_recurrences.json"


class AnalysisUsageError(DimError, ValueError):
    """Raised for empty recurrences, decrements below 1 or an empty recurrence list."""


def _decrement_problem(decrements: Sequence[int]) -> str:
    if not decrements:
        return "A recurrence needs at least one branch"
    if any(a < 1 for a in decrements):
        return f"Decrements must be at least 1, got {list(decrements)}"
    return ""


class Recurrence(BaseModel):
    """
    A branching recurrence ``C(n) <= C(n - a_1) + ... + C(n - a_t)``.

    ``decrements`` keeps the order it was given in; comparisons between recurrences treat it as a
    multiset (see ``key``).
    """

    model_config = ConfigDict(frozen=True)

    decrements: Tuple[int, ...]

    @field_validator("decrements", mode="after")
    @classmethod
    def _validate_decrements(cls, value: Tuple[int, ...]) -> Tuple[int, ...]:
        problem = _decrement_problem(value)
        if problem:
            raise ValueError(problem)
        return value

    @classmethod
    def of(cls, *decrements: int) -> "Recurrence":
        """
        Builds a recurrence from its decrements.

        Raises:
            AnalysisUsageError: If there are none, or one is below 1
        """
        problem = _decrement_problem(decrements)
        if problem:
            raise AnalysisUsageError(problem)
        return cls(decrements=tuple(decrements))

    @classmethod
    def parse(cls, text: str) -> "Recurrence":
        """
        Reads a comma-separated decrement list such as ``"16,12,10,6"``.

        Raises:
            AnalysisUsageError: If an entry is not an integer, or the list is empty
        """
        parts = [p.strip() for p in text.split(",") if p.strip()]
        try:
            decrements = [int(p) for p in parts]
        except ValueError as exc:
            raise AnalysisUsageError(f"Not a decrement list: {text!r}") from exc
        return cls.of(*decrements)

    @property
    def key(self) -> Tuple[int, ...]:
        """The decrements as a descending tuple; equal keys mean equal multisets."""
        return tuple(sorted(self.decrements, reverse=True))

    def __len__(self) -> int:
        return len(self.decrements)

    def __str__(self) -> str:
        return "{" + ",".join(str(a) for a in self.decrements) + "}"


class CatalogueEntry(BaseModel):
    """
    One labelled recurrence of the branching analysis.

    An intermediate entry is a branching that the analysis expands further by combining it with the
    branching of the next step; it shows how a final entry is built and does not bound the running time.
    """

    model_config = ConfigDict(frozen=True)

    label: str
    step: str
    decrements: Tuple[int, ...]
    intermediate: bool = False

    @property
    def recurrence(self) -> Recurrence:
        """The entry's decrements as a ``Recurrence``."""
        return Recurrence(decrements=self.decrements)


class Catalogue(BaseModel):
    """The shipped recurrence list."""
    entries: List[CatalogueEntry] = Field(default_factory=list)


def branching_factor(r: Recurrence) -> float:
    """
    The unique root ``alpha >= 1`` of ``sum(alpha ** -a for a in r.decrements) == 1``.

    A single branch has factor 1. Otherwise the root lies in ``[1, t ** (1 / min(a))]`` where the
    function changes sign, and is found by Brent's method.

    Args:
        r: The recurrence

    Returns:
        float: The branching factor
    """
    if len(r) == 1:
        return 1.0
    amin = min(r.decrements)

    def excess(alpha: float) -> float:
        return sum(alpha ** (-a) for a in r.decrements) - 1.0

    hi = len(r) ** (1.0 / amin)
    # only equal decrements put the root on the bracket end
    if excess(hi) >= 0.0:
        return hi
    return float(brentq(excess, 1.0, hi, xtol=FACTOR_XTOL))


def _direct_steps(a: Tuple[int, ...], b: Tuple[int, ...]) -> bool:
    """True when ``b`` arises from ``a`` by spreading one pair of branches without growing their sum."""
    if len(a) != len(b) or len(a) < 2:
        return False
    target = Counter(b)
    for i in range(len(a)):
        for j in range(i + 1, len(a)):
            hi, lo = max(a[i], a[j]), min(a[i], a[j])
            rest = Counter(a)
            rest[a[i]] -= 1
            rest[a[j]] -= 1
            left = target - rest
            if sum(left.values()) != 2 or any(rest[k] > target[k] for k in rest):
                continue
            big, small = sorted(left.elements(), reverse=True)
            if big >= hi >= lo >= small and hi + lo >= big + small:
                return True
    return False


def _spreads(c: Tuple[int, ...], low: int, high: int, min_sum: int) -> Iterator[Tuple[int, ...]]:
    """Single spreading steps from ``c`` that stay inside the entry and sum bounds."""
    total = sum(c)
    seen = set()
    for i in range(len(c)):
        for j in range(i + 1, len(c)):
            hi, lo = max(c[i], c[j]), min(c[i], c[j])
            if (hi, lo) in seen:
                continue
            seen.add((hi, lo))
            rest = c[:i] + c[i + 1 : j] + c[j + 1 :]
            for big in range(hi, high + 1):
                for small in range(max(low, 1), lo + 1):
                    if big + small > hi + lo or (big, small) == (hi, lo):
                        continue
                    if total - (hi + lo) + big + small < min_sum:
                        continue
                    yield tuple(sorted(rest + (big, small), reverse=True))


def covers(a: Recurrence, b: Recurrence, *, max_depth: int = MAX_COVER_CHAIN_DEPTH) -> bool:
    """
    Whether ``a`` is covered by ``b``.

    ``a`` is covered by ``b`` when both have the same number of branches and ``b`` is reached from
    ``a`` by a chain of steps, each replacing two decrements ``p >= q`` by ``P >= p`` and ``Q <= q``
    with ``P + Q <= p + q``. Chains are searched breadth first up to ``max_depth`` steps; False
    therefore means "not shown covered".

    Args:
        a: The covered candidate
        b: The covering candidate
        max_depth: Longest chain searched

    Returns:
        bool: True if a chain was found
    """
    if len(a) != len(b):
        return False
    start, goal = a.key, b.key
    if start == goal or _direct_steps(start, goal):
        return True
    # steps never lower the maximum, raise the minimum or raise the sum
    if max(start) > max(goal) or min(start) < min(goal) or sum(start) < sum(goal):
        return False
    low, high, min_sum = min(goal), max(goal), sum(goal)
    frontier = deque([(start, 0)])
    visited = {start}
    while frontier:
        current, depth = frontier.popleft()
        if depth >= max_depth:
            continue
        for nxt in _spreads(current, low, high, min_sum):
            if nxt == goal:
                return True
            if nxt in visited:
                continue
            visited.add(nxt)
            frontier.append((nxt, depth + 1))
    logger.debug("No cover chain from %s to %s within %d steps", a, b, max_depth)
    return False


def combine(x: Recurrence, y: Recurrence, first: Optional[int] = None) -> Recurrence:
    """
    Branches with ``x`` and then with ``y`` inside one branch of ``x``.

    The designated branch ``first`` (the smallest decrement by default) is replaced by
    ``first + y_j`` for every decrement ``y_j`` of ``y``; the other branches of ``x`` are kept.

    Raises:
        AnalysisUsageError: If ``first`` is not a decrement of ``x``
    """
    pivot = min(x.decrements) if first is None else first
    if pivot not in x.decrements:
        raise AnalysisUsageError(f"{pivot} is not a branch of {x}")
    rest = list(x.decrements)
    rest.remove(pivot)
    return Recurrence(decrements=tuple(pivot + b for b in y.decrements) + tuple(rest))


def worst_factor(rs: Sequence[Recurrence]) -> Tuple[Recurrence, float]:
    """
    The recurrence with the largest branching factor; the first one wins ties.

    Raises:
        AnalysisUsageError: If ``rs`` is empty
    """
    if not rs:
        raise AnalysisUsageError("worst_factor needs at least one recurrence")
    best, best_factor = rs[0], branching_factor(rs[0])
    for r in rs[1:]:
        factor = branching_factor(r)
        if factor > best_factor:
            best, best_factor = r, factor
    return best, best_factor


def load_catalogue(*, intermediate: bool = True) -> List[CatalogueEntry]:
    """
    Reads the shipped recurrences of the branching analysis.

    Args:
        intermediate: Keep the entries that are later expanded by combination
    """
    text = resources.files(__package__).joinpath(CATALOGUE_RESOURCE).read_text(encoding="utf-8")
    entries = Catalogue.model_validate_json(text).entries
    return entries if intermediate else [e for e in entries if not e.intermediate]
