"""Rendering of tables and reports as JSON, CSV or markdown.

Machine formats (JSON, CSV) carry a fixed number of decimals and a fixed
row order so identical inputs give byte-identical output. Markdown is for
people: two decimals, success rate in whole percent, aligned columns.
"""

import csv
import io
import json
from typing import List, Optional, Sequence, Tuple

from src.config.settings import AnalysisConfig
from src.models.case_models import ParseReport
from src.models.indicator_models import (
    INDICATOR_COLUMNS,
    BenchmarkReport,
    CorrelationMatrix,
    IndicatorTable,
)


# Markdown headers in the notation the indicators are usually published with.
DISPLAY_NAMES = {
    "cv": "CV", "cr": "CR", "cd": "CD", "cmd": "CMD", "ciqr90": "CIQR90",
    "gc": "GC", "oo_os": "OoOS", "sr": "SR", "oo_iqr": "OoIQR",
}

UNDEFINED_CSV = "NA"
UNDEFINED_MARKDOWN = "n/a"


def _round(value: Optional[float], decimals: int) -> Optional[float]:
    # "+ 0.0" turns a rounded -0.0 into 0.0
    return None if value is None else round(value, decimals) + 0.0


def _fixed(value: Optional[float], decimals: int, missing: str = UNDEFINED_CSV) -> str:
    return missing if value is None else f"{_round(value, decimals):.{decimals}f}"


def _json(document: dict) -> str:
    return json.dumps(document, indent=2) + "\n"


def _csv(rows: Sequence[Sequence[object]], preamble: Sequence[str] = ()) -> str:
    buffer = io.StringIO()
    for line in preamble:
        buffer.write(f"# {line}\n")
    csv.writer(buffer, lineterminator="\n").writerows(rows)
    return buffer.getvalue()


def markdown_table(headers: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    """Aligned markdown table; first column left-aligned, the rest right."""
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(headers)]

    def line(cells: Sequence[str]) -> str:
        padded = [cells[0].ljust(widths[0])] + [c.rjust(w) for c, w in zip(cells[1:], widths[1:])]
        return "| " + " | ".join(padded) + " |"

    rule = "|" + "|".join(
        [":" + "-" * (widths[0] + 1)] + ["-" * (w + 1) + ":" for w in widths[1:]]
    ) + "|"
    return "\n".join([line(headers), rule, *(line(r) for r in rows)]) + "\n"


def _markdown_cell(column: str, value: float, decimals: int) -> str:
    if column == "sr":
        return f"{value:.0f} %"
    if column == "oo_iqr":
        return f"{100 * value:.{decimals}f} %"
    return f"{value:.{decimals}f}"


# === INDICATOR TABLE ===

def render_indicator_table(
    table: IndicatorTable,
    fmt: str,
    decimals: int = AnalysisConfig.machine_decimals,
    markdown_decimals: int = AnalysisConfig.markdown_decimals,
) -> str:
    """Render the processes x indicators table (the ``analyze`` report)."""
    table = table.sorted_by_id()
    if fmt == "json":
        rows = []
        for row in table.rows:
            entry = {"process_id": row.process_id}
            entry.update({c: _round(row.indicators.value(c), decimals) for c in INDICATOR_COLUMNS})
            entry["case_count"] = row.indicators.case_count
            rows.append(entry)
        return _json({
            "command": "analyze",
            "columns": [*INDICATOR_COLUMNS, "case_count"],
            "rows": rows,
        })

    if fmt == "csv":
        lines: List[List[object]] = [["process_id", *INDICATOR_COLUMNS, "case_count"]]
        for row in table.rows:
            count = row.indicators.case_count
            lines.append([
                row.process_id,
                *(_fixed(row.indicators.value(c), decimals) for c in INDICATOR_COLUMNS),
                "" if count is None else count,
            ])
        return _csv(lines)

    headers = ["Process", *(DISPLAY_NAMES[c] for c in INDICATOR_COLUMNS), "Cases"]
    cells = [
        [
            row.process_id,
            *(_markdown_cell(c, row.indicators.value(c), markdown_decimals) for c in INDICATOR_COLUMNS),
            "" if row.indicators.case_count is None else str(row.indicators.case_count),
        ]
        for row in table.rows
    ]
    return markdown_table(headers, cells)


# === CORRELATION MATRIX ===

def render_correlation(
    matrix: CorrelationMatrix,
    dependability: Sequence[Tuple[str, Optional[float]]],
    target: str,
    fmt: str,
    decimals: int = AnalysisConfig.machine_decimals,
    markdown_decimals: int = AnalysisConfig.markdown_decimals,
) -> str:
    """Render the correlation matrix and the ranking against ``target``.

    Undefined entries appear as ``null`` (JSON), ``NA`` (CSV) or ``n/a``.
    """
    if fmt == "json":
        return _json({
            "command": "correlate",
            "labels": matrix.labels,
            "matrix": [[_round(v, decimals) for v in row] for row in matrix.coefficients],
            "dependability": {
                "target": target,
                "ranking": [{"indicator": name, "r": _round(r, decimals)} for name, r in dependability],
            },
        })

    if fmt == "csv":
        rows: List[List[object]] = [["", *matrix.labels]]
        for label, row in zip(matrix.labels, matrix.coefficients):
            rows.append([label, *(_fixed(v, decimals) for v in row)])
        return _csv(rows)

    headers = ["", *(DISPLAY_NAMES.get(l, l) for l in matrix.labels)]
    cells = [
        [DISPLAY_NAMES.get(label, label), *(_fixed(v, markdown_decimals, UNDEFINED_MARKDOWN) for v in row)]
        for label, row in zip(matrix.labels, matrix.coefficients)
    ]
    ranking = [
        [DISPLAY_NAMES.get(name, name), _fixed(r, markdown_decimals, UNDEFINED_MARKDOWN)]
        for name, r in dependability
    ]
    target_name = DISPLAY_NAMES.get(target, target)
    return (
        markdown_table(headers, cells)
        + f"\nIndicators by strength of correlation with {target_name}:\n\n"
        + markdown_table(["Indicator", f"r({target_name})"], ranking)
    )


# === BENCHMARK REPORT ===

def render_benchmark(
    report: BenchmarkReport,
    fmt: str,
    decimals: int = AnalysisConfig.machine_decimals,
    markdown_decimals: int = AnalysisConfig.markdown_decimals,
) -> str:
    """Render ranking, verdicts and the thresholds that produced them."""
    flags = {f.process_id: f for f in report.flags}
    bounds = "; ".join(report.thresholds.describe())

    if fmt == "json":
        return _json({
            "command": "benchmark",
            "key": report.key,
            "descending": report.descending,
            "thresholds": {
                "sr_floor": report.thresholds.sr_floor,
                "ceilings": dict(sorted(report.thresholds.ceilings.items())),
            },
            "benchmark_ids": report.benchmark_ids,
            "ranking": [
                {
                    "rank": e.rank,
                    "process_id": e.process_id,
                    "value": _round(e.value, decimals),
                    "erratic": flags[e.process_id].erratic,
                    "triggers": [
                        {
                            "indicator": t.indicator,
                            "value": _round(t.value, decimals),
                            "bound": t.bound,
                            "rule": t.rule,
                        }
                        for t in flags[e.process_id].triggers
                    ],
                    "relative_to_healthy": _round(report.relative_to_healthy.get(e.process_id), decimals),
                }
                for e in report.ranking
            ],
            "flagged": report.flagged_ids,
        })

    def triggers(process_id: str) -> str:
        return "; ".join(t.describe() for t in flags[process_id].triggers)

    if fmt == "csv":
        rows: List[List[object]] = [["rank", "process_id", report.key, "erratic", "triggers", "relative_to_healthy"]]
        for e in report.ranking:
            rows.append([
                e.rank,
                e.process_id,
                _fixed(e.value, decimals),
                "true" if flags[e.process_id].erratic else "false",
                triggers(e.process_id),
                _fixed(report.relative_to_healthy.get(e.process_id), decimals, ""),
            ])
        return _csv(rows, preamble=[f"thresholds: {bounds}"])

    key_name = DISPLAY_NAMES.get(report.key, report.key)
    cells = [
        [
            str(e.rank),
            e.process_id,
            _markdown_cell(report.key, e.value, markdown_decimals),
            "yes" if flags[e.process_id].erratic else "",
            triggers(e.process_id),
        ]
        for e in report.ranking
    ]
    order = "descending" if report.descending else "ascending"
    benchmarks = ", ".join(report.benchmark_ids) or "none present"
    return (
        f"Thresholds: {bounds}\n"
        f"Benchmark processes: {benchmarks}\n"
        f"Ranked by {key_name} ({order})\n\n"
        + markdown_table(["Rank", "Process", key_name, "Erratic", "Triggers"], cells)
    )


# === PARSE REPORT ===

def render_parse_report(report: ParseReport, fmt: str) -> str:
    """Render validation diagnostics (the ``validate`` report)."""
    if fmt == "json":
        return _json({
            "command": "validate",
            "accepted": report.accepted,
            "rejected": report.rejected,
            "total": report.total,
            "rejects": [{"source": r.source, "line": r.line, "reason": r.reason} for r in report.rejects],
            "warnings": report.warnings,
        })

    if fmt == "csv":
        preamble = [f"accepted={report.accepted} rejected={report.rejected} total={report.total}"]
        preamble += [f"warning: {w}" for w in report.warnings]
        rows: List[List[object]] = [["source", "line", "reason"]]
        rows += [[r.source or "", r.line, r.reason] for r in report.rejects]
        return _csv(rows, preamble=preamble)

    text = f"Accepted {report.accepted} of {report.total} data line(s); rejected {report.rejected}.\n"
    if report.rejects:
        text += "\n" + markdown_table(
            ["Source", "Line", "Reason"],
            [[r.source or "", str(r.line), r.reason] for r in report.rejects],
        )
    if report.warnings:
        text += "\nWarnings:\n\n" + "".join(f"- {w}\n" for w in report.warnings)
    return text
