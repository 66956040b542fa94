import contextlib
import logging
import sys
from pathlib import Path
from typing import Iterator, List, Optional, Sequence, Tuple

import rich.console
import rich.table
from pydantic import AliasChoices, Field, ValidationError
from pydantic_settings import BaseSettings, CliApp, CliImplicitFlag, CliPositionalArg, CliSubCommand, SettingsError

from . import logging_helper
from .analysis import Recurrence, branching_factor, load_catalogue, worst_factor
from .bench import BenchResults, GeneratorKind, generate, load_suite, run_suite
from .constants import DimError
from .formats import claimed_total, format_graph, format_solution, read_certificate, read_graph
from .gen import assign_random_weights
from .models import format_weight
from .oracle import OracleUsageError, brute_force, verify
from .settings import SolveMode, SolverSettings
from .solve import Solver

logger = logging.getLogger(__name__)

EXIT_YES = 0
EXIT_NO = 1
EXIT_ERROR = 2

_stdout = rich.console.Console()


class _SolverArgs(BaseSettings):
    """Options shared by the commands that run a solver."""

    mode: Optional[SolveMode] = Field(default=None, description="decide, min or max; defaults to the settings")
    threads: Optional[int] = Field(default=None, ge=1, description="Worker processes for top-level components")
    debug_assert: CliImplicitFlag[bool] = Field(
        default=False, description="Check reduced structures and elimination bounds while solving"
    )
    verbose: CliImplicitFlag[bool] = Field(default=False, description="Log solve milestones to standard error")
    log_file: Optional[Path] = Field(default=None, description="Also write a DEBUG log to this file")

    def solver_settings(self) -> SolverSettings:
        """Settings from config files and environment, with the explicitly given options on top."""
        overrides = {"mode": self.mode, "threads": self.threads, "debug_assert": self.debug_assert or None}
        return SolverSettings(**{k: v for k, v in overrides.items() if v is not None})

    @contextlib.contextmanager
    def logging_scope(self) -> Iterator[None]:
        """Raises the console level and attaches the log file for the duration of a command."""
        root = logging.getLogger()
        package = logging.getLogger("dimsolve")
        if self.verbose:
            logging_helper.set_console_level(logging.INFO)
        if self.log_file is not None:
            package.setLevel(logging.DEBUG)
            logging_helper.add_file_handler(root, self.log_file)
        try:
            yield
        finally:
            logging_helper.close_file_handlers(root)
            logging_helper.reset_console_level()
            package.setLevel(logging.NOTSET)


class _SolveCli(_SolverArgs):
    """Solve a graph file: prints YES with the matching (exit 0) or NO (exit 1)."""

    input: CliPositionalArg[Path] = Field(description="Graph file")
    stats: Optional[Path] = Field(default=None, description="Write search statistics as JSON to this file")
    cert: CliImplicitFlag[bool] = Field(default=False, description="Always print the total weight line")

    def cli_cmd(self):
        """Run the solver on the input graph."""
        with self.logging_scope():
            settings = self.solver_settings()
            graph = read_graph(self.input, exact=settings.exact_weights)
            solution, stats = Solver(settings).solve(graph)
            if self.stats is not None:
                self.stats.write_text(stats.model_dump_json(indent=2), encoding="utf-8")
            with_weight = self.cert or settings.mode != "decide"
            sys.stdout.write(format_solution(solution, with_weight=with_weight))
        raise SystemExit(EXIT_YES if solution is not None else EXIT_NO)


class _OracleCli(_SolverArgs):
    """Solve a small graph by exhaustive enumeration."""

    input: CliPositionalArg[Path] = Field(description="Graph file")

    def cli_cmd(self):
        """Run the brute-force oracle on the input graph."""
        with self.logging_scope():
            settings = self.solver_settings()
            graph = read_graph(self.input, exact=settings.exact_weights)
            solution = brute_force(graph, settings.mode, limit=settings.brute_force_limit)
            sys.stdout.write(format_solution(solution, with_weight=settings.mode != "decide"))
        raise SystemExit(EXIT_YES if solution is not None else EXIT_NO)


class _VerifyCli(BaseSettings):
    """Check a certificate: prints VALID (exit 0) or INVALID with the reason (exit 1)."""

    input: CliPositionalArg[Path] = Field(description="Graph file")
    certificate: CliPositionalArg[Path] = Field(description="Certificate file")

    def cli_cmd(self):
        """Verify the certificate against the graph."""
        graph = read_graph(self.input)
        certificate = read_certificate(self.certificate)
        try:
            verdict = verify(graph, certificate.edges, claimed_total(certificate, graph))
        except OracleUsageError as exc:
            print(f"INVALID: {exc}")
            raise SystemExit(EXIT_NO) from exc
        if not verdict.accepted:
            print(f"INVALID: {verdict.reason}")
            raise SystemExit(EXIT_NO)
        suffix = f" w {format_weight(verdict.weight)}" if graph.weighted else ""
        print(f"VALID{suffix}")
        raise SystemExit(EXIT_YES)


class _GenArgs(BaseSettings):
    """Options shared by the generators."""

    seed: int = Field(default=0, description="Seed of the random generator")
    weights: Optional[Tuple[int, int]] = Field(default=None, description="Random integer weights as LOW,HIGH")
    output: Optional[Path] = Field(
        default=None, validation_alias=AliasChoices("o", "output"), description="Output file (stdout when absent)"
    )

    def _emit(self, kind: GeneratorKind, params: dict) -> None:
        graph = generate(kind, params, self.seed)
        if self.weights is not None:
            graph = assign_random_weights(graph, *self.weights, seed=self.seed)
        comments = [f"dimsolve gen {kind} seed={self.seed} " + " ".join(f"{k}={v}" for k, v in params.items())]
        if graph.planted is not None:
            comments.append("planted " + " ".join(f"{u}-{v}" for u, v in sorted(graph.planted)))
        text = format_graph(graph, comments)
        if self.output is None:
            sys.stdout.write(text)
        else:
            self.output.write_text(text, encoding="utf-8")
            logger.info("Wrote %r to %s", graph, self.output)


class _GenPlantedCli(_GenArgs):
    """Yes-instance around a planted matching."""

    n_matched: int = Field(description="Vertices on the matched side (even)")
    n_independent: int = Field(description="Vertices on the independent side")
    p: float = Field(default=0.5, description="Probability of each cross edge")

    def cli_cmd(self):
        """Generate a planted instance."""
        self._emit("planted", {"n_matched": self.n_matched, "n_independent": self.n_independent, "edge_prob": self.p})


class _GenGnpCli(_GenArgs):
    """Erdős–Rényi G(n, p) graph."""

    n: int = Field(description="Number of vertices")
    p: float = Field(description="Edge probability")

    def cli_cmd(self):
        """Generate a G(n, p) graph."""
        self._emit("gnp", {"n": self.n, "p": self.p})


class _GenRegularCli(_GenArgs):
    """Random d-regular graph."""

    n: int = Field(description="Number of vertices")
    d: int = Field(default=3, description="Degree")

    def cli_cmd(self):
        """Generate a d-regular graph."""
        self._emit("regular", {"n": self.n, "d": self.d})


class _GenCli(BaseSettings):
    """Write a generated graph."""

    planted: CliSubCommand[_GenPlantedCli]
    gnp: CliSubCommand[_GenGnpCli]
    regular: CliSubCommand[_GenRegularCli]

    def cli_cmd(self):
        """Run the selected generator."""
        CliApp.run_subcommand(self)


class _FactorCli(BaseSettings):
    """Print the branching factor of a recurrence."""

    decrements: CliPositionalArg[str] = Field(description="Comma-separated decrements, e.g. 16,12,10,6")

    def cli_cmd(self):
        """Compute the branching factor."""
        print(f"{branching_factor(Recurrence.parse(self.decrements)):.4f}")


class _RecurrencesCli(BaseSettings):
    """Print the recurrences of the branching analysis with their factors."""

    def cli_cmd(self):
        """Tabulate the shipped recurrence catalogue."""
        entries = load_catalogue()
        worst, factor = worst_factor([e.recurrence for e in entries if not e.intermediate])
        table = rich.table.Table(title="Branching recurrences")
        for column in ("step", "case", "decrements", "factor", "kind"):
            table.add_column(column)
        for entry in entries:
            value = branching_factor(entry.recurrence)
            if entry.intermediate:
                kind, style = "intermediate", "dim"
            else:
                kind, style = "final", "bold red" if entry.recurrence.key == worst.key else None
            row = (entry.step, entry.label, str(entry.recurrence), f"{value:.4f}", kind)
            table.add_row(*row, style=style)
        _stdout.print(table)
        _stdout.print(f"worst {worst} {factor:.4f}")


class _BenchCli(_SolverArgs):
    """Generate and solve the instances of a benchmark suite."""

    suite: Path = Field(description="Suite JSON file")
    output: Optional[Path] = Field(default=None, description="Write the results as JSON to this file")

    def cli_cmd(self):
        """Run the suite."""
        with self.logging_scope():
            results = run_suite(load_suite(self.suite), self.solver_settings())
        table = rich.table.Table(title=f"Bench {self.suite.name}")
        for column in ("case", "seed", "n", "m", "answer", "weight", "nodes", "leaves", "seconds"):
            table.add_column(column)
        for r in results:
            table.add_row(
                r.case,
                str(r.seed),
                str(r.n),
                str(r.m),
                r.answer,
                r.total_weight or "",
                str(r.nodes),
                str(r.leaves),
                f"{r.seconds:.3f}",
            )
        _stdout.print(table)
        if self.output is not None:
            self.output.write_text(BenchResults(results).model_dump_json(indent=2), encoding="utf-8")


class DimsolveCli(BaseSettings, cli_prog_name="dimsolve", cli_kebab_case=True):
    """Exact solver for the dominating induced matching problem."""

    solve: CliSubCommand[_SolveCli]
    verify: CliSubCommand[_VerifyCli]
    oracle: CliSubCommand[_OracleCli]
    gen: CliSubCommand[_GenCli]
    factor: CliSubCommand[_FactorCli]
    recurrences: CliSubCommand[_RecurrencesCli]
    bench: CliSubCommand[_BenchCli]

    def cli_cmd(self):
        """Run the selected subcommand."""
        CliApp.run_subcommand(self)


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Runs the command line and returns its exit code.

    Returns:
        int: 0 for YES or success, 1 for NO or an invalid certificate, 2 for errors
    """
    args: List[str] = list(sys.argv[1:] if argv is None else argv)
    try:
        CliApp.run(DimsolveCli, cli_args=args)
    except SystemExit as exc:
        if exc.code is None:
            return EXIT_YES
        return exc.code if isinstance(exc.code, int) else EXIT_ERROR
    except (DimError, OSError, ValidationError, SettingsError) as exc:
        logger.debug("Command failed", exc_info=exc)
        print(f"dimsolve: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_YES


def main():
    """Entry point for the dimsolve command line."""
    sys.exit(run())


if __name__ == "__main__":
    main()
