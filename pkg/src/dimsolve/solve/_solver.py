import logging
import time
from concurrent.futures import FIRST_COMPLETED, Future, ProcessPoolExecutor, wait
from typing import Generator, List, Optional, Tuple

from ..branch import BranchChoice, BranchStep, select_branch_vertex
from ..graph import DimGraph
from ..instance import Instance, Label
from ..models import Solution, SolveStats
from ..oracle import verify
from ..reduce import (
    ReconstructionError,
    apply_structural_rules,
    check_rule_step,
    reduce_pseudo,
    reduce_to_fixpoint,
    strip_decided,
)
from ..settings import SolveMode, SolverSettings
from ._base_case import solve_base
from ._reconstruct import reconstruct

logger = logging.getLogger(__name__)

#: A solver frame yields child instances and receives their solutions.
Frame = Generator[Instance, Optional[Solution], Optional[Solution]]


def _union(parts: List[Solution], zero) -> Solution:
    edges = frozenset(e for part in parts for e in part.edges)
    return Solution(edges=edges, total_weight=sum((part.total_weight for part in parts), zero))


def split_components(inst: Instance) -> List[Instance]:
    """
    Strips decided vertices and returns one sub-instance per component of what is left.

    The strip record goes onto ``inst.trace``; sub-instances start with empty traces.
    """
    strip_decided(inst)
    return [inst.subinstance(component) for component in inst.graph.components()]


class Solver:
    """
    Branch-and-reduce solver for dominating induced matchings.

    Each instance handed to the search gets a generator frame that reduces it, splits it into
    components, rewrites it and finally branches. Frames yield child instances to a driver loop that
    keeps them on an explicit stack, so deep searches never hit the interpreter's recursion limit.

    Example:
        ```python
        solver = Solver(mode="min")
        solution, stats = solver.solve(DimGraph.from_edges(2, [(1, 2)], {(1, 2): 3}))
        ```
    """

    def __init__(self, settings: Optional[SolverSettings] = None, **overrides) -> None:
        """
        Args:
            settings: Solver settings; read from the config files and environment when omitted
            **overrides: Individual settings fields taking precedence over ``settings``
        """
        base = settings if settings is not None else SolverSettings()
        self.settings = base.model_copy(update=overrides) if overrides else base
        self.stats = SolveStats(mode=self.settings.mode)

    @property
    def optimize(self) -> bool:
        """True in ``min`` and ``max`` mode."""
        return self.settings.mode != "decide"

    # -- public entry points ----------------------------------------------------------------------

    def solve(self, graph: DimGraph) -> Tuple[Optional[Solution], SolveStats]:
        """
        Solves a graph from scratch.

        Maximisation runs as minimisation of the negated weights. Optimisation on an unweighted graph
        uses unit weights. Every solution is lifted to the input graph and verified there.

        Args:
            graph: The input graph; it is not modified

        Returns:
            Tuple[Optional[Solution], SolveStats]: The solution (None when none exists) and the run statistics

        Raises:
            ReconstructionError: If a lifted solution fails verification
        """
        mode = self.settings.mode
        self.stats = SolveStats(mode=mode)
        work = graph
        if self.optimize and not graph.weighted:
            logger.warning("Graph has no weights; %s mode uses unit weights", mode)
            work = graph.with_unit_weights()
        target = work.negated() if mode == "max" else work
        logger.info("Solving %r in %s mode", graph, mode)
        started = time.perf_counter()
        if self.settings.threads > 1 and len(target.components()) > 1:
            solution = self._solve_parallel(target)
        else:
            solution = self._drive(self._root(target))
        self.stats.wall_time_s = time.perf_counter() - started

        if solution is not None:
            solution = reconstruct([], solution, original=target)
            if mode == "max":
                solution = Solution(edges=solution.edges, total_weight=-solution.total_weight)
            verdict = verify(work, solution)
            if not verdict.accepted:
                raise ReconstructionError(f"Solver produced an invalid certificate: {verdict.reason}")
        logger.info(
            "Answer %s after %d nodes, %d leaves in %.3fs",
            "YES" if solution is not None else "NO",
            self.stats.nodes,
            self.stats.leaves,
            self.stats.wall_time_s,
        )
        return solution, self.stats

    def solve_instance(self, inst: Instance) -> Optional[Solution]:
        """
        Solves a labeled instance in place, minimising in optimisation modes.

        The solution refers to the instance's graph as it was on entry.
        """
        inst.on_rule = self.stats.record_rule
        return self._drive(inst)

    # -- search -----------------------------------------------------------------------------------

    def _root(self, graph: DimGraph) -> Instance:
        inst = Instance(graph.copy())
        inst.on_rule = self.stats.record_rule
        return inst

    def _drive(self, root: Instance) -> Optional[Solution]:
        stack: List[Frame] = [self._frame(root, 1)]
        reply: Optional[Solution] = None
        while True:
            try:
                child = stack[-1].send(reply)
            except StopIteration as done:
                stack.pop()
                reply = done.value
                if not stack:
                    return reply
                continue
            stack.append(self._frame(child, len(stack) + 1))
            reply = None

    def _leaf(self, inst: Instance, solution: Optional[Solution]) -> Optional[Solution]:
        self.stats.leaves += 1
        return None if solution is None else reconstruct(inst.trace, solution)

    def _frame(self, inst: Instance, depth: int) -> Frame:
        settings = self.settings
        mode: SolveMode = "min" if self.optimize else "decide"
        self.stats.nodes += 1
        self.stats.max_depth = max(self.stats.max_depth, depth)
        while True:
            # step 1
            if inst.count_undecided() <= settings.base_case_size or inst.graph.max_degree() <= 2:
                return self._leaf(inst, solve_base(inst, mode, base_case_size=settings.base_case_size))

            # step 2
            undecided = inst.count_undecided()
            if reduce_pseudo(inst) is not None:
                return self._leaf(inst, None)
            if inst.count_undecided() < undecided:
                continue

            # step 3
            if inst.i_vertices() or inst.m1() or not inst.graph.is_connected():
                parts = split_components(inst)
                if len(parts) > 1:
                    return (yield from self._conjunction(inst, parts))
                continue

            # step 4
            rule = apply_structural_rules(inst)
            if rule is not None:
                if settings.debug_assert:
                    check_rule_step(inst, rule, undecided, 1)
                continue

            # step 5
            return (yield from self._branch(inst))

    def _conjunction(self, inst: Instance, parts: List[Instance]) -> Frame:
        self.stats.components += len(parts)
        logger.debug("Split into %d components", len(parts))
        solved: List[Solution] = []
        for part in parts:
            result = yield part
            if result is None:
                return None
            solved.append(result)
        return reconstruct(inst.trace, _union(solved, inst.graph.zero))

    def _branch(self, inst: Instance) -> Frame:
        choice = select_branch_vertex(inst, debug=self.settings.debug_assert)
        self.stats.record_branch(choice.step)
        logger.debug("Branching on %s at case %s", choice.vertex, choice.step)
        if self.settings.debug_assert:
            self._check_elimination(inst, choice)
        matched = yield inst.branch(choice.vertex, Label.M)
        if matched is not None and not self.optimize:
            return reconstruct(inst.trace, matched)
        independent = yield inst.branch(choice.vertex, Label.I)
        best = matched
        if independent is not None and independent.better_than(best):
            best = independent
        return None if best is None else reconstruct(inst.trace, best)

    # -- elimination bounds -----------------------------------------------------------------------

    @staticmethod
    def _eliminated(inst: Instance, choice: BranchChoice, label: Label) -> Optional[int]:
        scratch = inst.branch(choice.vertex, label)
        scratch.on_rule = None
        if reduce_to_fixpoint(scratch) is not None:
            return None
        return inst.count_undecided() - scratch.count_undecided()

    def _check_elimination(self, inst: Instance, choice: BranchChoice) -> None:
        """Measures both branches and logs any shortfall against the single-step bounds."""
        delta_m = self._eliminated(inst, choice, Label.M)
        delta_i = self._eliminated(inst, choice, Label.I)
        self.stats.record_elimination(choice.step, delta_m, delta_i)
        need_m, need_i = _required(choice)
        short = []
        if need_m is not None and delta_m is not None and delta_m < need_m:
            short.append(f"M branch eliminated {delta_m} < {need_m}")
        if need_i is not None and delta_i is not None and delta_i < need_i:
            short.append(f"I branch eliminated {delta_i} < {need_i}")
        if short:
            self.stats.bound_violations += 1
            logger.warning(
                "Elimination bound missed at case %s on %s: %s. Reproducer: %s",
                choice.step,
                choice.vertex,
                "; ".join(short),
                inst.describe(),
            )

    # -- parallel top level -----------------------------------------------------------------------

    def _solve_parallel(self, graph: DimGraph) -> Optional[Solution]:
        components = graph.components()
        self.stats.components += len(components)
        settings = self.settings.model_copy(update={"threads": 1, "mode": "min" if self.optimize else "decide"})
        parts: List[Solution] = []
        with ProcessPoolExecutor(max_workers=self.settings.threads) as pool:
            pending: set[Future] = {
                pool.submit(_solve_component, graph.subgraph_copy(component), settings) for component in components
            }
            while pending:
                done, pending = wait(pending, return_when=FIRST_COMPLETED)
                for future in done:
                    solution, stats = future.result()
                    self.stats = self.stats.merge(stats)
                    if solution is None:
                        for other in pending:
                            other.cancel()
                        return None
                    parts.append(solution)
        return _union(parts, graph.zero)


def _required(choice: BranchChoice) -> Tuple[Optional[int], Optional[int]]:
    """Least U-vertex eliminations each branch of a case guarantees, where a single-step bound exists."""
    if choice.step is BranchStep.EFFECTIVE:
        lam, x = choice.lam or 0, choice.x or 0
        return 4 + lam + x, 8 - lam - min(x, 4)
    if choice.step is BranchStep.DEGREE_TWO_ANCHOR:
        return 6, 6
    if choice.step is BranchStep.TWO_DEGREE_TWO:
        return 7, 4
    if choice.step is BranchStep.NO_ANCHOR:
        return None, 4
    return None, None


def _solve_component(graph: DimGraph, settings: SolverSettings) -> Tuple[Optional[Solution], SolveStats]:
    """Worker entry point: solves one top-level component in a fresh solver."""
    solver = Solver(settings)
    solution = solver._drive(solver._root(graph))
    return solution, solver.stats


def solve(
    graph: DimGraph, mode: SolveMode = "decide", *, settings: Optional[SolverSettings] = None, **overrides
) -> Tuple[Optional[Solution], SolveStats]:
    """
    Solves ``graph`` in ``mode``.

    Args:
        graph: The input graph
        mode: ``decide``, ``min`` or ``max``
        settings: Base settings; read from config files and environment when omitted
        **overrides: Further settings fields, e.g. ``threads`` or ``debug_assert``

    Returns:
        Tuple[Optional[Solution], SolveStats]: The solution, or None when the graph has none, and statistics
    """
    return Solver(settings, mode=mode, **overrides).solve(graph)


def decompose(
    inst: Instance, mode: SolveMode = "decide", *, settings: Optional[SolverSettings] = None
) -> Optional[Solution]:
    """
    Solves a pseudo-feasible instance as the conjunction of its components.

    Decided I- and M1-vertices are stripped first; the fixed M1 pairs and their weight are part of
    the result. ``inst`` is not modified.

    Args:
        inst: A pseudo-feasible instance
        mode: ``decide``, ``min`` or ``max``
        settings: Base settings for the component solves

    Returns:
        Optional[Solution]: The union of the component solutions and the fixed pairs, or None if a
            component has no solution
    """
    work = inst.copy()
    work.trace = []
    if mode == "max":
        work.graph = work.graph.negated()
    solver = Solver(settings, mode="min" if mode != "decide" else "decide")
    parts: List[Solution] = []
    for part in split_components(work):
        solution = solver.solve_instance(part)
        if solution is None:
            return None
        parts.append(solution)
    lifted = reconstruct(work.trace, _union(parts, work.graph.zero))
    if mode == "max":
        lifted = Solution(edges=lifted.edges, total_weight=-lifted.total_weight)
    return lifted
