"""Tests for case-log parsing and writing."""

import io
from pathlib import Path

import pytest

from src.errors import FatalParseError
from src.ingestion.log_parser import (
    CaseLogParser,
    detect_format,
    load_case_log,
    parse_case_log,
    write_case_log,
)
from src.ingestion.synthetic import generate_synthetic_log
from src.models.case_models import Outcome


HEADER = "process_id,case_id,duration_seconds,status\n"


def _parse(text, fmt="csv"):
    return parse_case_log(io.StringIO(text), fmt)


# === CSV ===

def test_parses_well_formed_rows():
    records, report = _parse(HEADER + "EFP,c1,213,success\nMP,c2,246.5,failure\n")
    assert report.clean and report.accepted == 2
    assert records[0].process_id == "EFP" and records[0].duration == 213.0
    assert records[0].outcome is Outcome.SUCCESS
    assert records[1].outcome is Outcome.FAILURE


def test_status_other_than_success_is_failure():
    records, _ = _parse(HEADER + "P1,c1,10,Timeout\nP1,c2,11, SUCCESS \n")
    assert [r.outcome for r in records] == [Outcome.FAILURE, Outcome.SUCCESS]
    assert records[0].raw_status == "Timeout"


@pytest.mark.parametrize("row, reason", [
    ("EFP,c1,-5,success", "non-positive duration"),
    ("EFP,c1,0,success", "non-positive duration"),
    ("EFP,c1,abc,success", "duration is not a number"),
    ("EFP,c1,inf,success", "non-finite duration"),
    ("EFP,c1,nan,success", "non-finite duration"),
    (",c1,12,success", "missing process_id"),
    ("EFP,,12,success", "missing case_id"),
    ("EFP,c1,12,", "missing status"),
    ("EFP,c1,12", "expected 4 fields, got 3"),
])
def test_malformed_rows_are_rejected_with_reason(row, reason):
    records, report = _parse(HEADER + "EFP,c0,200,success\n" + row + "\n")
    assert len(records) == 1
    assert report.rejected == 1
    assert report.rejects[0].line == 3
    assert reason in report.rejects[0].reason


def test_line_numbers_count_physical_lines():
    text = HEADER + "A,c1,1,success\n\nA,c2,x,success\nA,c3,3,success\nA,c4,-1,success\n"
    records, report = _parse(text)
    assert len(records) == 2
    assert [r.line for r in report.rejects] == [4, 6]
    assert report.total == 4


def test_missing_header_is_fatal():
    with pytest.raises(FatalParseError):
        _parse("EFP,c1,213,success\n")


def test_empty_input_is_fatal():
    with pytest.raises(FatalParseError):
        _parse("")


def test_header_only_gives_no_records():
    records, report = _parse(HEADER)
    assert records == [] and report.total == 0 and report.clean


def test_header_columns_may_be_reordered_and_extended():
    text = "status,duration_seconds,host,case_id,process_id\nsuccess,12.5,vm1,c1,EFP\n"
    records, report = _parse(text)
    assert records[0].duration == 12.5 and records[0].process_id == "EFP"
    assert report.warnings == ["ignoring extra column(s): host"]


def test_binary_stream_with_bom():
    data = ("\ufeff" + HEADER + "EFP,c1,213,success\n").encode("utf-8")
    records, report = parse_case_log(io.BytesIO(data), "csv")
    assert report.accepted == 1 and records[0].process_id == "EFP"


def test_invalid_utf8_line_is_rejected_and_the_rest_kept():
    good = "".join(f"EFP,c{i},{200 + i % 7},success\n" for i in range(5000))
    data = HEADER.encode() + good.encode() + b"EFP,c-bad,\xff\xfe,success\n" + b"EFP,c-last,205,success\n"
    records, report = parse_case_log(io.BytesIO(data), "csv")
    assert report.accepted == 5001
    assert report.rejected == 1
    assert report.rejects[0].line == 5002
    assert "UTF-8" in report.rejects[0].reason
    assert records[-1].case_id == "c-last"


def test_invalid_utf8_line_in_json_lines_is_rejected():
    data = (
        b'{"process_id": "A", "case_id": "c1", "duration_seconds": 3, "status": "success"}\n'
        b'{"process_id": "\xc3", "case_id": "c2", "duration_seconds": 4, "status": "success"}\n'
    )
    records, report = parse_case_log(io.BytesIO(data), "jsonl")
    assert [r.case_id for r in records] == ["c1"]
    assert [r.line for r in report.rejects] == [2]


def test_unknown_format():
    with pytest.raises(ValueError):
        CaseLogParser("xml")


# === JSON lines ===

def test_parses_json_lines():
    text = (
        '{"process_id": "EFP", "case_id": "c1", "duration_seconds": 213, "status": "success"}\n'
        "\n"
        '{"process_id": "MP", "case_id": 7, "duration_seconds": "246", "status": "failed", "host": "vm"}\n'
        "not json\n"
        "[1, 2]\n"
        '{"process_id": "MP", "case_id": "c9", "status": "success"}\n'
        '{"process_id": "MP", "case_id": "c9", "duration_seconds": null, "status": "success"}\n'
    )
    records, report = _parse(text, "jsonl")
    assert [r.case_id for r in records] == ["c1", "7"]
    assert records[1].duration == 246.0 and records[1].outcome is Outcome.FAILURE
    assert [r.line for r in report.rejects] == [4, 5, 6, 7]
    assert "invalid JSON" in report.rejects[0].reason
    assert "missing field(s): duration_seconds" in report.rejects[2].reason
    assert report.warnings == ["ignoring extra field(s): host"]


def test_json_duration_too_large_for_a_float_is_rejected():
    text = (
        '{"process_id": "A", "case_id": "c1", "duration_seconds": 1' + "0" * 400 + ', "status": "success"}\n'
        '{"process_id": "A", "case_id": "c2", "duration_seconds": 4, "status": "success"}\n'
    )
    records, report = _parse(text, "jsonl")
    assert len(records) == 1
    assert report.rejects[0].line == 1 and report.rejects[0].reason == "non-finite duration"


# === Files ===

def test_detect_format():
    assert detect_format(Path("a.jsonl"), b"") == "jsonl"
    assert detect_format(Path("a.csv"), b"{") == "csv"
    assert detect_format(Path("a.log"), b'  {"process_id"') == "jsonl"
    assert detect_format(Path("a.log"), b"process_id,case_id") == "csv"


def test_load_case_log_from_file(sample_log_path):
    records, report = load_case_log(sample_log_path)
    assert report.accepted == 20 and report.clean
    assert {r.process_id for r in records} == {"EFP", "MP", "P1", "P2"}


def test_missing_file_is_fatal(tmp_path):
    with pytest.raises(FatalParseError):
        load_case_log(tmp_path / "absent.csv")


# === Writing ===

def test_written_log_parses_back_to_the_same_records():
    original = list(generate_synthetic_log(500, 6, seed=3))
    buffer = io.StringIO()
    assert write_case_log(original, buffer) == 500
    buffer.seek(0)
    records, report = parse_case_log(buffer, "csv")
    assert report.clean
    assert [r.model_dump() for r in records] == [r.model_dump() for r in original]
