"""Main entry point for STEADY, the bot-dispersion analysis toolkit.

Usage:
    python -m src.main analyze logs/cases.csv --format markdown
    python -m src.main correlate data/reference_indicators.csv
    python -m src.main benchmark logs/cases.csv --fail-on-flag
    python -m src.main validate logs/cases.jsonl
"""

import argparse
import asyncio
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, Optional, Sequence, Tuple

from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler

from src.analysis.benchmark import validate_thresholds
from src.config.settings import load_defaults
from src.errors import FatalParseError, SteadyError, UnknownIndicator
from src.graph import create_pipeline_graph
from src.models.case_models import ParseReport
from src.models.indicator_models import INDICATOR_COLUMNS, Thresholds
from src.models.run_config import RunConfig
from src.reporting.render import (
    render_benchmark,
    render_correlation,
    render_indicator_table,
    render_parse_report,
)
from src.state.pipeline_state import PipelineState


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_FLAGGED = 3

MAX_REJECTS_SHOWN = 20


class UsageError(Exception):
    """Bad command line; maps to exit code 1."""


class SteadyArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that reports usage errors instead of exiting with 2."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: {message}")


def _bool_flag(raw: str) -> bool:
    value = raw.strip().lower()
    if value in ("true", "yes", "1"):
        return True
    if value in ("false", "no", "0"):
        return False
    raise argparse.ArgumentTypeError(f"expected true or false, got {raw!r}")


def _quantile_pair(raw: str) -> Tuple[float, float]:
    try:
        low, high = (float(part) for part in raw.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two comma-separated probabilities, got {raw!r}")
    return low, high


def build_parser() -> argparse.ArgumentParser:
    """Command-line surface: one sub-command per report."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("inputs", nargs="+", type=Path, help="Case log file(s)")
    common.add_argument("--format", dest="output_format", choices=["json", "csv", "markdown"],
                        help="Report format (default: markdown on a terminal, json when piped)")
    common.add_argument("--input-format", choices=["auto", "csv", "jsonl"],
                        help="Case log format (default: detect from extension and content)")
    common.add_argument("--output", type=Path, help="Write the report here instead of stdout")
    common.add_argument("--min-cases", type=int, help="Warn for processes with fewer cases")
    common.add_argument("--verbose", action="store_true", help="Debug logging on stderr")

    indicators = argparse.ArgumentParser(add_help=False)
    indicators.add_argument("--include-failures", type=_bool_flag, metavar="true|false",
                            help="Use failed cases' durations in the indicators (default: true)")
    indicators.add_argument("--ciqr-quantiles", type=_quantile_pair, metavar="LOW,HIGH",
                            help="Quantile pair of the CIQR indicator (default: 0.05,0.95)")
    indicators.add_argument("--sd-multiplier", type=float,
                            help="Width of the mean +/- k*sigma outlier band (default: 1)")
    indicators.add_argument("--iqr-multiplier", type=float,
                            help="Tukey fence multiplier of the IQR outlier rule (default: 1.5)")

    parser = SteadyArgumentParser(
        prog="steady",
        description="Dispersion indicators for the execution durations of automated processes",
    )
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")
    commands.required = True

    commands.add_parser("analyze", parents=[common, indicators],
                        help="Compute the indicator table per process")

    correlate = commands.add_parser("correlate", parents=[common, indicators],
                                    help="Correlate indicators across processes (logs or indicator tables)")
    correlate.add_argument("--target", help="Column to rank indicators against (default: sr)")

    benchmark = commands.add_parser("benchmark", parents=[common, indicators],
                                    help="Rank processes and flag erratic ones")
    benchmark.add_argument("--sr-floor", type=float, help="Success-rate percentage below which a process is flagged")
    benchmark.add_argument("--cmd-ceiling", type=float, help="CMD above which a process is flagged")
    benchmark.add_argument("--key", help="Indicator to rank by (default: cmd)")
    benchmark.add_argument("--ascending", action="store_true", help="Rank the smallest key value first")
    benchmark.add_argument("--fail-on-flag", action="store_true", help="Exit with 3 when any process is flagged")

    commands.add_parser("validate", parents=[common], help="Report parse diagnostics only")
    return parser


def build_config(args: argparse.Namespace, defaults: Dict) -> RunConfig:
    """Merge parsed flags over resolved defaults; flags win.

    Raises:
        ValidationError: On out-of-range values
        UnknownIndicator: If ``--key`` or ``--target`` names no indicator column
        InvalidThreshold: If the SR floor or CMD ceiling is malformed
    """
    values = dict(defaults)
    values.update({k: v for k, v in vars(args).items() if v is not None})
    if values.get("output_format") is None:
        values["output_format"] = "markdown" if sys.stdout.isatty() else "json"
    config = RunConfig(**values)

    for name in (config.key, config.target):
        if name not in INDICATOR_COLUMNS:
            raise UnknownIndicator(f"unknown indicator {name!r}; expected one of {', '.join(INDICATOR_COLUMNS)}")
    validate_thresholds(Thresholds(ceilings={"cmd": config.cmd_ceiling}, sr_floor=config.sr_floor))
    return config


async def run_pipeline(config: RunConfig) -> PipelineState:
    """Run the workflow graph once and return its final state."""
    graph = create_pipeline_graph(config)
    state: PipelineState = {"config": config, "warnings": [], "results": {}}
    return await graph.ainvoke(state)


def cmd_analyze(config: RunConfig, state: PipelineState) -> str:
    """Indicator table, one row per process."""
    return render_indicator_table(state["table"], config.output_format, config.decimals)


def cmd_correlate(config: RunConfig, state: PipelineState) -> str:
    """Correlation matrix plus the indicators ranked against the target column."""
    correlation = state["results"]["correlation"]
    return render_correlation(correlation["matrix"], correlation["dependability"], config.target,
                              config.output_format, config.decimals)


def cmd_benchmark(config: RunConfig, state: PipelineState) -> str:
    """Ranking, erratic-process flags and the thresholds used."""
    return render_benchmark(state["results"]["benchmark"], config.output_format, config.decimals)


def cmd_validate(config: RunConfig, state: PipelineState) -> str:
    """Parse diagnostics, including grouping warnings."""
    report = state["parse_report"].model_copy(update={"warnings": state.get("warnings", [])})
    return render_parse_report(report, config.output_format)


COMMANDS: Dict[str, Callable[[RunConfig, PipelineState], str]] = {
    "analyze": cmd_analyze,
    "correlate": cmd_correlate,
    "benchmark": cmd_benchmark,
    "validate": cmd_validate,
}


def render_report(config: RunConfig, state: PipelineState) -> str:
    return COMMANDS[config.command](config, state)


def _report_rejects(console: Console, parse_report: Optional[ParseReport]) -> None:
    if parse_report is None or not parse_report.rejects:
        return
    console.print(f"{parse_report.rejected} row(s) rejected:", style="yellow", markup=False)
    for reject in parse_report.rejects[:MAX_REJECTS_SHOWN]:
        console.print(f"  {reject.describe()}", markup=False, highlight=False)
    hidden = len(parse_report.rejects) - MAX_REJECTS_SHOWN
    if hidden > 0:
        console.print(f"  ... and {hidden} more", markup=False)


def _report_diagnostics(console: Console, state: PipelineState) -> None:
    _report_rejects(console, state.get("parse_report"))
    for warning in state.get("warnings", []):
        console.print(f"warning: {warning}", style="yellow", markup=False, highlight=False)


def _write(report: str, output: Optional[Path]) -> None:
    if output is None:
        sys.stdout.write(report)
        sys.stdout.flush()
        return
    with open(output, "w", encoding="utf-8", newline="\n") as f:
        f.write(report)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse arguments, run the pipeline, write the report.

    Returns:
        int: 0 success, 1 usage error, 2 data error, 3 processes flagged
            with ``--fail-on-flag``
    """
    console = Console(stderr=True)

    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        console.print(f"error: {e}", style="bold red", markup=False, highlight=False)
        return EXIT_USAGE

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.ERROR,
        format="%(message)s",
        handlers=[RichHandler(console=console, show_path=False)],
        force=True,
    )

    try:
        config = build_config(args, load_defaults())
    except (ValidationError, ValueError) as e:
        console.print(f"error: invalid configuration: {e}", style="bold red", markup=False, highlight=False)
        return EXIT_USAGE
    except SteadyError as e:
        console.print(f"error: {e}", style="bold red", markup=False, highlight=False)
        return e.exit_code

    logger.debug("Running %s on %d input(s)", config.command, len(config.inputs))
    try:
        state = asyncio.run(run_pipeline(config))
        report = render_report(config, state)
        _write(report, config.output)
    except SteadyError as e:
        if isinstance(e, FatalParseError):
            _report_rejects(console, e.report)
        console.print(f"error: {e}", style="bold red", markup=False, highlight=False)
        return e.exit_code
    except OSError as e:
        console.print(f"error: {e}", style="bold red", markup=False, highlight=False)
        return EXIT_DATA

    if config.command == "validate":
        return EXIT_OK if state["parse_report"].clean else EXIT_DATA

    _report_diagnostics(console, state)
    if config.command == "benchmark" and config.fail_on_flag and state["results"]["benchmark"].flagged_ids:
        return EXIT_FLAGGED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
