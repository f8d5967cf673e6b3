"""
Command-line interface.

    qrunes check FILE
    qrunes compile FILE [--target cpp|python|qir] [-o DIR] [--config RUN.json]
    qrunes run FILE --config RUN.json [--pretty] [--workers N]
    qrunes new FILE
    qrunes lsp

JSON goes to standard output; logs go to standard error. Exit codes:
0 success, 1 diagnostics or pipeline error, 2 unreadable input or
unwritable output.
"""

import argparse
import json
import sys
from pathlib import Path
from typing import Any

from rich.console import Console
from rich.table import Table

from qrunes.api.deps import get_toolchain
from qrunes.core import (
    CompilationFailedError,
    QRunesError,
    RunConfigError,
    SourceFileError,
    log_startup_info,
    logger,
    settings,
)
from qrunes.schemas.results import SimulationReport
from qrunes.schemas.run_config import RunConfig
from qrunes.services.toolchain import QIR_TARGET, CheckResult, Toolchain
from qrunes.utils.file_handler import (
    read_run_config,
    read_source,
    write_outputs,
    write_template,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ENVIRONMENT = 2

BAR_WIDTH = 40


# ===========================================
# Output helpers
# ===========================================


def emit_json(data: Any) -> None:
    sys.stdout.write(json.dumps(data, indent=2) + "\n")


def emit_error(error: QRunesError) -> int:
    """Report a pipeline error as JSON and return its exit code."""
    if isinstance(error, CompilationFailedError):
        emit_json(error.details["diagnostics"])
        return EXIT_FAILED
    if isinstance(error, SourceFileError):
        logger.error(error.message)
        return EXIT_ENVIRONMENT
    emit_json({"error": error.to_dict()})
    return EXIT_FAILED


def render_histogram(report: SimulationReport, console: Console | None = None) -> None:
    """Histogram as a bar table, most frequent outcome first."""
    console = console or Console()
    table = Table(title=f"{report.shots} shots (seed {report.seed})")
    table.add_column("Outcome", style="bold")
    table.add_column("Count", justify="right")
    table.add_column("Probability", justify="right")
    table.add_column("")
    top = max(report.histogram.values(), default=1)
    ranked = sorted(report.histogram.items(), key=lambda kv: (-kv[1], kv[0]))
    for bitstring, count in ranked:
        bar = "█" * max(1, round(BAR_WIDTH * count / top))
        table.add_row(bitstring, str(count), f"{count / report.shots:.3f}", bar)
    console.print(table)

    registers = Table(title="Registers")
    registers.add_column("Register", style="bold")
    registers.add_column("Mean", justify="right")
    registers.add_column("Min", justify="right")
    registers.add_column("Max", justify="right")
    for name, stats in report.registers.items():
        registers.add_row(name, f"{stats.mean:.4f}", str(stats.min), str(stats.max))
    console.print(registers)
    for failure in report.failures:
        console.print(
            f"[bold red]{failure.code}[/bold red] aborted {failure.shots} shot(s), "
            f"first at shot {failure.first_shot}: {failure.message}"
        )


def _check_file(path: Path) -> CheckResult:
    logger.compiling(path.name)
    return get_toolchain().check_source(read_source(path), path.name)


# ===========================================
# Commands
# ===========================================


def cmd_check(args: argparse.Namespace) -> int:
    check = _check_file(args.file)
    emit_json(check.records())
    if not check.ok:
        return EXIT_FAILED
    logger.success(f"{args.file.name}: no errors")
    return EXIT_OK


def cmd_compile(args: argparse.Namespace) -> int:
    check = _check_file(args.file)
    config: RunConfig | None = None
    if args.target == QIR_TARGET:
        if args.config is None:
            raise RunConfigError("the qir target needs --config")
        config = read_run_config(args.config)
    output = get_toolchain().compile(check, args.target, args.file.stem, config)
    directory = args.output or args.file.parent
    written = write_outputs(output.files, directory)
    emit_json({"files": [str(p) for p in written]})
    logger.success(f"Wrote {len(written)} file(s) to {directory}")
    return EXIT_OK


def cmd_run(args: argparse.Namespace) -> int:
    config = read_run_config(args.config)
    check = _check_file(args.file)
    toolchain = (
        get_toolchain() if args.workers is None else Toolchain(workers=args.workers)
    )
    report = toolchain.run(check, config)
    if args.pretty:
        render_histogram(report)
    else:
        emit_json(report.model_dump(mode="json"))
    return EXIT_OK


def cmd_new(args: argparse.Namespace) -> int:
    path = write_template(args.file)
    emit_json({"files": [str(path)]})
    return EXIT_OK


def cmd_lsp(args: argparse.Namespace) -> int:
    from qrunes.api.lsp import start_server

    start_server()
    return EXIT_OK


# ===========================================
# Parser
# ===========================================


def _positive(value: str) -> int:
    number = int(value)
    if number < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return number


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qrunes",
        description="Check, compile and simulate QRunes programs.",
    )
    parser.add_argument(
        "-v", "--verbose", action="store_true", help="Log pipeline steps to stderr"
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {settings.app_version}"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    check = commands.add_parser("check", help="Report diagnostics as JSON")
    check.add_argument("file", type=Path, help="QRunes source file")
    check.set_defaults(handler=cmd_check)

    compile_ = commands.add_parser("compile", help="Generate target sources")
    compile_.add_argument("file", type=Path, help="QRunes source file")
    compile_.add_argument(
        "--target",
        default=None,
        help="cpp, python, qir or a user profile (default: the 'language' setting)",
    )
    compile_.add_argument(
        "-o", "--output", type=Path, default=None, help="Output directory"
    )
    compile_.add_argument(
        "--config", type=Path, default=None, help="Run configuration (qir target)"
    )
    compile_.set_defaults(handler=cmd_compile)

    run = commands.add_parser("run", help="Simulate and print results as JSON")
    run.add_argument("file", type=Path, help="QRunes source file")
    run.add_argument("--config", type=Path, required=True, help="Run configuration")
    run.add_argument(
        "--pretty", action="store_true", help="Print a histogram table instead of JSON"
    )
    run.add_argument(
        "--workers", type=_positive, default=None, help="Simulator threads"
    )
    run.set_defaults(handler=cmd_run)

    new = commands.add_parser("new", help="Create a source file from the template")
    new.add_argument("file", type=Path, help="File to create")
    new.set_defaults(handler=cmd_new)

    lsp = commands.add_parser("lsp", help="Start the language server on stdio")
    lsp.set_defaults(handler=cmd_lsp)
    return parser


def main(argv: list[str] | None = None) -> int:
    """
    Run one CLI command.

    Args:
        argv: Arguments without the program name (default: sys.argv[1:])

    Returns:
        Process exit code
    """
    args = build_parser().parse_args(argv)
    if args.verbose:
        logger.set_level("DEBUG")
        log_startup_info()
    try:
        return int(args.handler(args))
    except QRunesError as e:
        return emit_error(e)
