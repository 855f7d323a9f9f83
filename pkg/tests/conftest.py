"""Shared fixtures: published sample durations, the bundled indicator table, log files."""

from pathlib import Path
from typing import Callable, Dict, List, Sequence

import pytest
from hypothesis import settings

from src.ingestion.tables import load_indicator_table
from src.models.case_models import CaseRecord, Outcome
from src.models.indicator_models import IndicatorTable


DATA_DIR = Path(__file__).resolve().parent.parent / "data"

# Five sample case durations (seconds) of four processes.
SAMPLE_DURATIONS: Dict[str, List[float]] = {
    "EFP": [213, 215, 210, 214, 211],
    "MP": [246, 238, 248, 235, 244],
    "P1": [166, 173, 180, 182, 8],
    "P2": [208, 199, 203, 496, 488],
}

LOG_HEADER = "process_id,case_id,duration_seconds,status\n"

settings.register_profile("steady", deadline=None)
settings.load_profile("steady")


def make_records(
    process_id: str,
    durations: Sequence[float],
    failures: int = 0,
) -> List[CaseRecord]:
    """Records for one process; the last ``failures`` cases failed."""
    records = []
    for i, duration in enumerate(durations):
        outcome = Outcome.FAILURE if i >= len(durations) - failures else Outcome.SUCCESS
        records.append(CaseRecord(
            process_id=process_id,
            case_id=f"{process_id}-{i}",
            duration=float(duration),
            outcome=outcome,
            raw_status=outcome.value,
        ))
    return records


@pytest.fixture
def sample_durations() -> Dict[str, List[float]]:
    return {k: list(v) for k, v in SAMPLE_DURATIONS.items()}


@pytest.fixture
def reference_table() -> IndicatorTable:
    return load_indicator_table(DATA_DIR / "reference_indicators.csv")


@pytest.fixture
def reference_table_path() -> Path:
    return DATA_DIR / "reference_indicators.csv"


@pytest.fixture
def sample_log_path() -> Path:
    return DATA_DIR / "sample_cases.csv"


@pytest.fixture
def write_log(tmp_path) -> Callable[..., Path]:
    """Write text to a file under tmp_path and return its path."""
    def _write(text: str, name: str = "cases.csv") -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path
    return _write


@pytest.fixture
def log_text() -> Callable[[Dict[str, Sequence[float]]], str]:
    """CSV case log for {process_id: durations}, every case successful."""
    def _text(durations: Dict[str, Sequence[float]], status: str = "success") -> str:
        lines = [LOG_HEADER]
        for pid, values in durations.items():
            lines += [f"{pid},{pid}-{i},{v},{status}\n" for i, v in enumerate(values)]
        return "".join(lines)
    return _text
