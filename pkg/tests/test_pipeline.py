"""Tests for the workflow state, the process executor and the pipeline graph."""

import asyncio
from pathlib import Path

import pytest

from src.errors import FatalParseError, InsufficientData
from src.executor.process_executor import ProcessExecutor
from src.graph import create_pipeline_graph
from src.ingestion.grouping import group_by_process
from src.models.run_config import RunConfig
from src.state.pipeline_state import merge_results
from tests.conftest import make_records


def _run(config):
    graph = create_pipeline_graph(config)
    return asyncio.run(graph.ainvoke({"config": config, "warnings": [], "results": {}}))


def test_merge_results_is_recursive():
    left = {"correlation": {"matrix": 1}, "a": 1}
    right = {"correlation": {"ranking": 2}, "a": 3}
    assert merge_results(left, right) == {"correlation": {"matrix": 1, "ranking": 2}, "a": 3}
    assert merge_results(None, {"b": 1}) == {"b": 1}


# === Executor ===

def test_executor_builds_table_in_process_order(sample_durations):
    records = [r for pid in ("P2", "EFP", "MP") for r in make_records(pid, sample_durations[pid])]
    config = RunConfig(command="analyze", inputs=[Path("unused.csv")])
    update = asyncio.run(ProcessExecutor(config).execute({"groups": group_by_process(records)}))
    assert update["table"].process_ids == ["EFP", "MP", "P2"]
    assert update["table"].get("EFP").oo_iqr == 0.0
    assert update["warnings"] == []


def test_executor_skips_processes_without_durations_under_policy():
    records = make_records("A", [10, 20, 30]) + make_records("B", [5, 6], failures=2)
    config = RunConfig(command="analyze", inputs=[Path("unused.csv")], include_failures=False)
    update = asyncio.run(ProcessExecutor(config).execute({"groups": group_by_process(records)}))
    assert update["table"].process_ids == ["A"]
    assert len(update["warnings"]) == 1 and update["warnings"][0].startswith("B: skipped")


# === Graph ===

def test_analyze_path(sample_log_path):
    state = _run(RunConfig(command="analyze", inputs=[sample_log_path], min_cases=5))
    assert state["table"].process_ids == ["EFP", "MP", "P1", "P2"]
    assert state["table"].get("P1").oo_iqr == pytest.approx(0.2)
    assert state["warnings"] == []


def test_low_sample_warnings_use_min_cases(sample_log_path):
    state = _run(RunConfig(command="analyze", inputs=[sample_log_path]))
    assert len(state["warnings"]) == 4
    assert all("fewer than 90" in w for w in state["warnings"])


def test_validate_stops_before_computing(sample_log_path):
    state = _run(RunConfig(command="validate", inputs=[sample_log_path], min_cases=5))
    assert state["parse_report"].accepted == 20
    assert "table" not in state


def test_benchmark_path(sample_log_path):
    state = _run(RunConfig(command="benchmark", inputs=[sample_log_path], min_cases=5))
    report = state["results"]["benchmark"]
    assert [e.process_id for e in report.ranking][-1] == "EFP"
    assert report.benchmark_ids == ["EFP", "MP"]


def test_correlate_precomputed_table(reference_table_path):
    state = _run(RunConfig(command="correlate", inputs=[reference_table_path]))
    correlation = state["results"]["correlation"]
    assert correlation["matrix"].entry("cmd", "sr") == pytest.approx(-0.91, abs=0.05)
    assert correlation["dependability"][0][0] == "cmd"
    assert "parse_report" not in state


def test_correlate_needs_three_processes(write_log, log_text):
    path = write_log(log_text({"A": [1, 2, 3], "B": [4, 5, 9]}))
    with pytest.raises(InsufficientData):
        _run(RunConfig(command="correlate", inputs=[path], min_cases=1))


def test_mixed_correlate_inputs_are_fatal(reference_table_path, sample_log_path):
    with pytest.raises(FatalParseError):
        _run(RunConfig(command="correlate", inputs=[reference_table_path, sample_log_path]))


def test_only_malformed_rows_is_fatal(write_log):
    path = write_log("process_id,case_id,duration_seconds,status\nA,c1,-1,success\nA,c2,x,success\n")
    with pytest.raises(FatalParseError):
        _run(RunConfig(command="analyze", inputs=[path]))


def test_rejects_name_their_file(write_log, log_text):
    path = write_log(log_text({"A": [1, 2]}) + "A,c9,-4,success\n", name="bot_a.csv")
    state = _run(RunConfig(command="validate", inputs=[path]))
    assert state["parse_report"].rejects[0].describe() == "bot_a.csv:4: non-positive duration"


def test_correlate_tables_sharing_a_process_are_fatal(reference_table_path, tmp_path):
    copy = tmp_path / "second_batch.csv"
    copy.write_text(reference_table_path.read_text(encoding="utf-8"), encoding="utf-8")
    with pytest.raises(FatalParseError, match="'EFP'"):
        _run(RunConfig(command="correlate", inputs=[reference_table_path, copy]))


def test_only_malformed_rows_error_carries_the_rejects(write_log):
    path = write_log("process_id,case_id,duration_seconds,status\nA,c1,-1,success\nA,c2,x,success\n")
    with pytest.raises(FatalParseError) as excinfo:
        _run(RunConfig(command="analyze", inputs=[path]))
    assert [r.line for r in excinfo.value.report.rejects] == [2, 3]
