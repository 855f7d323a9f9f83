"""Workflow graph for the analysis pipeline."""

import logging
from collections import Counter
from pathlib import Path
from typing import Dict, List

from langgraph.graph import StateGraph, END, START
from pydantic import ValidationError

from src.analysis.benchmark import flag_erratic
from src.analysis.correlation import correlation_matrix, rank_indicators
from src.errors import FatalParseError
from src.executor.process_executor import ProcessExecutor
from src.ingestion.grouping import duplicate_case_warnings, group_by_process, validate_process
from src.ingestion.log_parser import load_case_log
from src.ingestion.tables import load_indicator_table, looks_like_indicator_table
from src.models.case_models import CaseLog, ParseReport
from src.models.indicator_models import IndicatorTable, Thresholds
from src.models.run_config import RunConfig
from src.state.pipeline_state import PipelineState


logger = logging.getLogger(__name__)


def _read_head(path: Path) -> str:
    try:
        with path.open("r", encoding="utf-8-sig", errors="replace") as f:
            return f.read(4096)
    except OSError as e:
        raise FatalParseError(f"cannot read {path}: {e.strerror or e}") from e


def _merge_tables(paths: List[Path]) -> IndicatorTable:
    """Concatenate precomputed indicator tables; a process may appear only once."""
    rows = [row for path in paths for row in load_indicator_table(path).rows]
    counts = Counter(row.process_id for row in rows)
    repeated = sorted(pid for pid, k in counts.items() if k > 1)
    if repeated:
        raise FatalParseError(
            f"process_id {', '.join(repr(pid) for pid in repeated)} appears more than once across the indicator tables"
        )
    try:
        return IndicatorTable(rows=rows)
    except ValidationError as e:
        raise FatalParseError(f"invalid indicator table: {e}") from e


def create_pipeline_graph(config: RunConfig) -> StateGraph:
    """Creates the workflow that turns case logs into the requested report.

    Nodes:
    - ingest: parse every input (or load precomputed indicator tables)
    - group: split cases per process and collect sample-size warnings
    - compute: one IndicatorSet per process, fanned out by ProcessExecutor
    - correlate: correlation matrix plus indicator dependability ranking
    - benchmark: ranking and erratic-process flags

    Routing depends on ``config.command``: ``validate`` stops after
    grouping, ``analyze`` after computing, ``correlate`` and ``benchmark``
    continue to their own node. A correlate run fed precomputed tables
    jumps straight from ingest to correlate.

    Args:
        config: Run configuration shared by all nodes

    Returns:
        StateGraph: Compiled workflow graph
    """
    workflow = StateGraph(PipelineState)
    executor = ProcessExecutor(config)

    # === NODES ===
    def ingest(state: PipelineState) -> Dict:
        if config.command == "correlate":
            tables = [p for p in config.inputs if looks_like_indicator_table(_read_head(p))]
            if tables:
                if len(tables) != len(config.inputs):
                    raise FatalParseError("correlate inputs must be all case logs or all indicator tables")
                return {"table": _merge_tables(tables)}

        records = CaseLog()
        report = ParseReport()
        for path in config.inputs:
            parsed, file_report = load_case_log(path, config.input_format)
            records.extend(parsed)
            file_report.rejects = [r.model_copy(update={"source": path.name}) for r in file_report.rejects]
            report = report.merge(file_report)
        return {"records": records, "parse_report": report, "warnings": list(report.warnings)}

    def group(state: PipelineState) -> Dict:
        report = state.get("parse_report") or ParseReport()
        if config.command != "validate" and report.accepted == 0 and report.rejected > 0:
            raise FatalParseError("no well-formed case rows to analyze", report=report)

        groups = group_by_process(state.get("records", []))
        warnings: List[str] = duplicate_case_warnings(groups)
        for g in groups:
            warnings.extend(validate_process(g, config.min_cases))
        if not groups:
            warnings.append("no cases found in input")
        return {"groups": groups, "warnings": warnings}

    def correlate(state: PipelineState) -> Dict:
        # Correlate exactly the values a machine-format report would carry,
        # so re-correlating a saved analyze report gives the same matrix.
        table = state["table"].sorted_by_id().quantized(config.decimals)
        matrix = correlation_matrix(table)
        undefined = [c for c, row in zip(matrix.labels, matrix.coefficients) if all(v is None for v in row)]
        warnings = [f"column {c} is constant; its correlations are undefined" for c in undefined]
        return {
            "results": {
                "correlation": {
                    "matrix": matrix,
                    "dependability": rank_indicators(matrix, config.target),
                }
            },
            "warnings": warnings,
        }

    def benchmark(state: PipelineState) -> Dict:
        thresholds = Thresholds(ceilings={"cmd": config.cmd_ceiling}, sr_floor=config.sr_floor)
        report = flag_erratic(
            state["table"].sorted_by_id(),
            thresholds,
            key=config.key,
            descending=not config.ascending,
            healthy_benchmark=config.healthy_benchmark,
            failing_benchmark=config.failing_benchmark,
        )
        return {"results": {"benchmark": report}}

    workflow.add_node("ingest", ingest)
    workflow.add_node("group", group)
    workflow.add_node("compute", executor.execute)
    workflow.add_node("correlate", correlate)
    workflow.add_node("benchmark", benchmark)

    # === ROUTING ===
    def after_ingest(state: PipelineState) -> str:
        return "correlate" if state.get("table") is not None else "group"

    def after_group(state: PipelineState) -> str:
        return END if config.command == "validate" else "compute"

    def after_compute(state: PipelineState) -> str:
        return {"correlate": "correlate", "benchmark": "benchmark"}.get(config.command, END)

    # === CONNECTIONS ===
    workflow.add_edge(START, "ingest")
    workflow.add_conditional_edges("ingest", after_ingest, ["correlate", "group"])
    workflow.add_conditional_edges("group", after_group, ["compute", END])
    workflow.add_conditional_edges("compute", after_compute, ["correlate", "benchmark", END])
    workflow.add_edge("correlate", END)
    workflow.add_edge("benchmark", END)

    return workflow.compile()
