"""Tests for report rendering."""

import csv
import io
import json

from src.analysis.benchmark import flag_erratic
from src.analysis.correlation import correlation_matrix, rank_indicators
from src.models.case_models import ParseReport, RowReject
from src.models.indicator_models import INDICATOR_COLUMNS, CorrelationMatrix
from src.reporting.render import (
    markdown_table,
    render_benchmark,
    render_correlation,
    render_indicator_table,
    render_parse_report,
)


def test_indicator_table_json(reference_table):
    document = json.loads(render_indicator_table(reference_table, "json"))
    assert document["columns"] == [*INDICATOR_COLUMNS, "case_count"]
    assert [r["process_id"] for r in document["rows"]] == sorted(reference_table.process_ids)
    efp = next(r for r in document["rows"] if r["process_id"] == "EFP")
    assert efp["sr"] == 100.0 and efp["oo_iqr"] == 0.0 and efp["case_count"] == 400


def test_indicator_table_csv_uses_fixed_decimals(reference_table):
    rows = list(csv.reader(io.StringIO(render_indicator_table(reference_table, "csv"))))
    assert rows[0] == ["process_id", *INDICATOR_COLUMNS, "case_count"]
    efp = next(r for r in rows if r[0] == "EFP")
    assert efp[1] == "0.2900" and efp[8] == "100.0000" and efp[10] == "400"


def test_indicator_table_markdown_shows_percentages(reference_table):
    text = render_indicator_table(reference_table, "markdown")
    lines = text.splitlines()
    assert lines[0].startswith("| Process")
    mp = next(line for line in lines if line.startswith("| MP "))
    assert "5 %" in mp and "0.09 %" in mp
    assert len({len(line) for line in lines}) == 1


def test_correlation_renders_undefined_entries():
    matrix = CorrelationMatrix(labels=["cv", "sr"], coefficients=[[1.0, None], [None, None]])
    ranking = [("cv", None)]
    assert json.loads(render_correlation(matrix, ranking, "sr", "json"))["matrix"][0][1] is None
    assert "NA" in render_correlation(matrix, ranking, "sr", "csv").splitlines()[1]
    assert "n/a" in render_correlation(matrix, ranking, "sr", "markdown")


def test_negative_zero_is_normalized():
    matrix = CorrelationMatrix(labels=["a", "b"], coefficients=[[1.0, -0.00001], [-0.00001, 1.0]])
    text = render_correlation(matrix, [("a", -0.00001)], "b", "json")
    assert "-0.0" not in text


def test_correlation_json_carries_dependability(reference_table):
    matrix = correlation_matrix(reference_table)
    document = json.loads(render_correlation(matrix, rank_indicators(matrix), "sr", "json"))
    assert document["dependability"]["ranking"][0] == {"indicator": "cmd", "r": round(matrix.entry("cmd", "sr"), 4)}


def test_benchmark_csv_echoes_thresholds(reference_table):
    text = render_benchmark(flag_erratic(reference_table), "csv")
    lines = text.splitlines()
    assert lines[0] == "# thresholds: sr >= 90; cmd <= 0.4"
    assert lines[1] == "rank,process_id,cmd,erratic,triggers,relative_to_healthy"
    assert lines[2].startswith("1,MP,0.9000,true,")


def test_benchmark_json_and_markdown(reference_table):
    report = flag_erratic(reference_table)
    document = json.loads(render_benchmark(report, "json"))
    assert document["thresholds"] == {"sr_floor": 90.0, "ceilings": {"cmd": 0.4}}
    assert document["flagged"] == report.flagged_ids
    assert document["ranking"][0]["triggers"][0]["rule"] == "floor"
    text = render_benchmark(report, "markdown")
    assert text.startswith("Thresholds: sr >= 90; cmd <= 0.4\n")
    assert "Benchmark processes: EFP, MP" in text


def test_parse_report_formats():
    report = ParseReport(accepted=2, rejected=1, rejects=[RowReject(line=3, reason="non-positive duration",
                                                                    source="a.csv")])
    document = json.loads(render_parse_report(report, "json"))
    assert document["total"] == 3 and document["rejects"][0]["line"] == 3
    lines = render_parse_report(report, "csv").splitlines()
    assert lines[0] == "# accepted=2 rejected=1 total=3"
    assert lines[-1] == "a.csv,3,non-positive duration"
    assert "Accepted 2 of 3" in render_parse_report(report, "markdown")


def test_markdown_table_alignment():
    text = markdown_table(["Name", "Value"], [["a", "1.00"], ["long name", "10.00"]])
    assert text.splitlines()[1] == "|:----------|------:|"
    assert text.splitlines()[2] == "| a         |  1.00 |"
