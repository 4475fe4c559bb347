import argparse
import asyncio
import json
from enum import Enum, IntEnum
from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, ValidationError, field_validator
from rich.console import Console
from rich.table import Table

try:
    from dotenv import load_dotenv

    load_dotenv()
except ImportError:
    pass

import sys

sys.path.insert(0, str(Path(__file__).parent))

from algebra.classical import symmetrize
from algebra.codec import (
    element_from_payload,
    element_to_json,
    element_to_payload,
    format_element,
    matrix_to_payload,
    parse_element,
    parse_shift_matrix,
    parse_sym_element,
)
from algebra.matrix_calc import ShiftMatrix, power_entry, tau
from algebra.pbw_core import UEAElement, commutator, multiply
from algebra.quasideriv import Variant, central_decomposition, derive, matrix_quasi_derive
from core.config import get_term_budget
from core.errors import (
    BudgetExceededError,
    DimensionError,
    ParseError,
    PreconditionError,
    QuasishiftError,
)
from core.logger import logger, setup_logger
from verify.reports import CheckStatus, VerificationReport
from verify.shift_verify import (
    Pairing,
    SeedSet,
    default_seeds,
    iterate_shift,
    run_centralizer_suite,
    run_classical_suite,
    run_eq9_suite,
    run_invariant_suite,
    run_lemma1_suite,
    run_limit_suite,
    t_hat,
    verify_theorem1,
)
from verify.store import ReportStore

console = Console()
error_console = Console(stderr=True)

COMPUTE_OPERATIONS = [
    "normal-order",
    "multiply",
    "commutator",
    "qderiv",
    "qmatrix",
    "dderiv",
    "symmetrize",
    "tau",
    "power-entry",
    "t-hat",
    "decompose",
]
VERIFY_SUITES = ["theorem1", "centralizer", "eq9", "lemma1", "invariant", "classical", "limit"]


class ExitCode(IntEnum):
    OK = 0
    CHECK_FAILED = 1
    USAGE = 2
    BUDGET = 3
    PRECONDITION = 4


class OutputFormat(str, Enum):
    TEXT = "text"
    JSON = "json"


class CliConfig(BaseModel):
    command: str
    operation: str
    d: int = 2
    inputs: List[str] = []
    xi: Optional[str] = None
    i: Optional[int] = None
    j: Optional[int] = None
    k: Optional[int] = None
    n: Optional[int] = None
    p: int = 1
    pmax: int = 2
    nmax: Optional[int] = None
    variant: Variant = Variant.HAT
    pairing: Pairing = Pairing.HAT_HAT
    seeds: SeedSet = SeedSet.TAU
    output_format: OutputFormat = OutputFormat.TEXT
    term_budget: Optional[int] = None
    record: Optional[str] = None

    @field_validator("d")
    @classmethod
    def _positive_dimension(cls, value: int) -> int:
        if value < 1:
            raise ValueError("d must be at least 1")
        return value

    @field_validator("term_budget")
    @classmethod
    def _positive_budget(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and value < 1:
            raise ValueError("budget must be positive")
        return value

    def shift_matrix(self) -> ShiftMatrix:
        """The --xi matrix, defaulting to diag(d, ..., 1)."""
        if self.xi is None:
            return ShiftMatrix.diag(list(range(self.d, 0, -1)))
        return parse_shift_matrix(self.xi, self.d)

    def element_text(self, position: int) -> str:
        """Element argument at ``position``; ``@path`` reads the text from a file."""
        try:
            raw = self.inputs[position]
        except IndexError:
            raise ParseError(f"{self.operation} needs {position + 1} element argument(s)", 1, 1) from None
        if raw.startswith("@"):
            return Path(raw[1:]).read_text()
        return raw

    def element(self, position: int) -> UEAElement:
        return parse_element(self.element_text(position), self.d)

    def require(self, *names: str) -> None:
        missing = [name for name in names if getattr(self, name) is None]
        if missing:
            raise ParseError(
                f"{self.operation} needs {', '.join('--' + name for name in missing)}", 1, 1
            )


def _add_shared_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--d", type=int, default=2, help="Dimension d of gl_d.")
    parser.add_argument("--format", dest="output_format", choices=["text", "json"], default="text")
    parser.add_argument("--budget", dest="term_budget", type=int, help="Term budget ceiling.")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quasishift",
        description="Exact PBW arithmetic in U(gl_d), quasi-derivations and argument-shift checks.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    compute = commands.add_parser("compute", help="Evaluate one operation and print the canonical result.")
    _add_shared_options(compute)
    operations = compute.add_subparsers(dest="operation", required=True)
    for name in COMPUTE_OPERATIONS:
        op = operations.add_parser(name)
        op.add_argument("inputs", nargs="*", help="Element text or @path.")
        if name in ("qderiv", "qmatrix", "dderiv"):
            op.add_argument("--variant", choices=[v.value for v in Variant], default=Variant.HAT.value)
        if name in ("qderiv", "power-entry"):
            op.add_argument("--i", type=int)
            op.add_argument("--j", type=int)
        if name in ("dderiv", "t-hat"):
            op.add_argument("--xi", help="diag:a,b,... or full:[[..],..]")
        if name == "dderiv":
            op.add_argument("--p", type=int, default=1)
        if name == "t-hat":
            op.add_argument("--i", type=int)
        if name == "tau":
            op.add_argument("--k", type=int)
        if name == "power-entry":
            op.add_argument("--n", type=int)

    verify = commands.add_parser("verify", help="Run a verification suite.")
    suites = verify.add_subparsers(dest="operation", required=True)
    for name in VERIFY_SUITES:
        suite = suites.add_parser(name)
        _add_shared_options(suite)
        suite.add_argument("--xi", help="diag:a,b,... or full:[[..],..] (default diag:d,...,1)")
        suite.add_argument("--record", help="SQLite file to store the report in.")
        if name in ("theorem1", "centralizer", "classical", "limit"):
            suite.add_argument("--pmax", type=int, default=2)
        if name == "theorem1":
            suite.add_argument("--pairing", choices=[p.value for p in Pairing], default=Pairing.HAT_HAT.value)
            suite.add_argument("--seeds", choices=[s.value for s in SeedSet], default=SeedSet.TAU.value)
        if name == "lemma1":
            suite.add_argument("--nmax", type=int)

    history = commands.add_parser("history", help="List recorded verification reports.")
    history.add_argument("--db", required=True)
    history.add_argument("--suite")
    history.add_argument("--format", dest="output_format", choices=["text", "json"], default="text")

    return parser


def _emit(text: str) -> None:
    console.out(text, highlight=False)


def _emit_element(element: UEAElement, config: CliConfig) -> None:
    if config.output_format == OutputFormat.JSON:
        _emit(element_to_json(element))
    else:
        _emit(format_element(element))


def cmd_compute(config: CliConfig) -> int:
    op, d = config.operation, config.d
    if op == "normal-order":
        result = config.element(0)
    elif op == "multiply":
        result = multiply(config.element(0), config.element(1))
    elif op == "commutator":
        result = commutator(config.element(0), config.element(1))
    elif op == "qderiv":
        config.require("i", "j")
        result = derive(config.i, config.j, config.element(0), config.variant)
    elif op == "qmatrix":
        matrix = matrix_quasi_derive(config.element(0), config.variant)
        if config.output_format == OutputFormat.JSON:
            _emit(matrix_to_payload(matrix).model_dump_json())
        else:
            for r in range(1, d + 1):
                for c in range(1, d + 1):
                    _emit(f"[{r},{c}] {format_element(matrix.entry(r, c))}")
        return ExitCode.OK
    elif op == "dderiv":
        result = iterate_shift(
            config.shift_matrix(), config.element(0), config.p, config.variant, check_central=False
        )
    elif op == "symmetrize":
        result = symmetrize(parse_sym_element(config.element_text(0), d))
    elif op == "tau":
        config.require("k")
        result = tau(config.k, d)
    elif op == "power-entry":
        config.require("n", "i", "j")
        result = power_entry(config.n, config.i, config.j, d)
    elif op == "t-hat":
        config.require("i")
        result = t_hat(config.shift_matrix(), config.i)
    elif op == "decompose":
        decomposition = central_decomposition(config.element(0))
        if config.output_format == OutputFormat.JSON:
            payload = [
                {"k": k, "a": element_to_payload(a).model_dump()} for k, a in decomposition
            ]
            _emit(json.dumps(payload))
        else:
            for k, a in decomposition:
                _emit(f"{k}: {format_element(a)}")
        return ExitCode.OK
    else:
        raise ParseError(f"unknown operation {op!r}", 1, 1)

    _emit_element(result, config)
    return ExitCode.OK


def run_suite(config: CliConfig) -> VerificationReport:
    xi = config.shift_matrix()
    suite = config.operation
    if suite == "theorem1":
        return verify_theorem1(
            xi,
            default_seeds(config.d, config.seeds),
            config.pmax,
            config.pairing,
            budget=get_term_budget(config.term_budget),
        )
    if suite == "centralizer":
        return run_centralizer_suite(xi, config.pmax)
    if suite == "eq9":
        return run_eq9_suite(xi)
    if suite == "lemma1":
        return run_lemma1_suite(xi, config.nmax)
    if suite == "invariant":
        return run_invariant_suite(xi)
    if suite == "classical":
        return run_classical_suite(xi, config.pmax)
    if suite == "limit":
        return run_limit_suite(xi, config.pmax)
    raise ParseError(f"unknown suite {suite!r}", 1, 1)


def create_report_table(report: VerificationReport) -> Table:
    table = Table(title=f"{report.suite} ({report.summary()})")

    table.add_column("Check", style="cyan")
    table.add_column("Status")
    table.add_column("Witness", style="magenta")

    for check in report.checks:
        status = "[green]pass[/green]" if check.status == CheckStatus.PASS else "[red]fail[/red]"
        witness = format_element(element_from_payload(check.witness)) if check.witness else ""
        table.add_row(check.id, status, witness)

    return table


def cmd_verify(config: CliConfig) -> int:
    report = run_suite(config)

    if config.record:
        report_id = asyncio.run(ReportStore(config.record).save_report(report.suite, report))
        logger.info(f"recorded {report.suite} report {report_id} in {config.record}")

    if config.output_format == OutputFormat.JSON:
        _emit(report.model_dump_json(exclude_none=True))
    else:
        console.print(create_report_table(report))

    return ExitCode.OK if report.passed else ExitCode.CHECK_FAILED


def cmd_history(db: str, suite: Optional[str], output_format: str) -> int:
    stored = asyncio.run(ReportStore(db).list_reports(suite))

    if output_format == OutputFormat.JSON:
        _emit(
            json.dumps(
                [
                    {
                        "report_id": item.report_id,
                        "suite": item.suite,
                        "created_at": item.created_at.isoformat(),
                        "passed": item.passed,
                    }
                    for item in stored
                ]
            )
        )
        return ExitCode.OK

    table = Table(title="Recorded verification reports")
    table.add_column("Report", style="cyan")
    table.add_column("Suite")
    table.add_column("Created")
    table.add_column("Result")
    for item in stored:
        table.add_row(
            item.report_id,
            item.suite,
            item.created_at.strftime("%Y-%m-%d %H:%M:%S"),
            f"{'pass' if item.passed else 'fail'} ({item.report.summary()})",
        )
    console.print(table)
    return ExitCode.OK


def main(argv: Optional[List[str]] = None) -> int:
    setup_logger()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return ExitCode.OK if e.code == 0 else ExitCode.USAGE

    if args.command == "history":
        return cmd_history(args.db, args.suite, args.output_format)

    try:
        config = CliConfig(**{k: v for k, v in vars(args).items() if v is not None})
    except ValidationError as e:
        error_console.print(f"error: {e.errors()[0]['msg']}", highlight=False, markup=False)
        return ExitCode.USAGE

    try:
        if config.command == "compute":
            return cmd_compute(config)
        return cmd_verify(config)
    except BudgetExceededError as e:
        logger.error(str(e))
        error_console.print(f"budget exceeded: {e}", highlight=False, markup=False)
        return ExitCode.BUDGET
    except ParseError as e:
        error_console.print(f"parse error: {e}", highlight=False, markup=False)
        return ExitCode.USAGE
    except (PreconditionError, DimensionError) as e:
        logger.error(str(e))
        contract = getattr(e, "contract", "dimension")
        error_console.print(f"{contract} violated: {e}", highlight=False, markup=False)
        return ExitCode.PRECONDITION
    except (OSError, QuasishiftError) as e:
        error_console.print(f"error: {e}", highlight=False, markup=False)
        return ExitCode.USAGE


if __name__ == "__main__":
    sys.exit(int(main()))
