"""Parsing of case-execution logs into columnar case logs."""

import codecs
import csv
import io
import json
import logging
import math
from pathlib import Path
from typing import IO, Iterable, List, Optional, Set, Tuple, Union

import numpy as np

from src.errors import FatalParseError
from src.models.case_models import CaseLog, CaseRecord, ParseReport, RowReject


logger = logging.getLogger(__name__)

REQUIRED_COLUMNS = ("process_id", "case_id", "duration_seconds", "status")

LOG_FORMATS = ("csv", "jsonl")

UNDECODABLE = "line is not valid UTF-8"


class CaseLogParser:
    """Reads a CSV or JSON-lines case log into a CaseLog plus diagnostics.

    Malformed data lines never abort the parse: each one is rejected with
    its line number and a reason, including lines that are not valid
    UTF-8. Only an unreadable input or a missing CSV header is fatal.
    """

    def __init__(self, fmt: str = "csv"):
        """
        Args:
            fmt (str): Log format, ``csv`` or ``jsonl``
        """
        if fmt not in LOG_FORMATS:
            raise ValueError(f"unsupported log format {fmt!r}")
        self.fmt = fmt
        self.rejects: List[Tuple[int, str]] = []
        self.warnings: List[str] = []

    def parse(self, stream: IO) -> Tuple[CaseLog, ParseReport]:
        """Parse a binary (UTF-8) or text stream.

        Returns:
            Tuple[CaseLog, ParseReport]: Accepted cases in input order and
            the line-level diagnostics

        Raises:
            FatalParseError: If the input cannot be read or has no valid header
        """
        self.rejects = []
        self.warnings = []

        try:
            raw = stream.read()
        except OSError as e:
            raise FatalParseError(f"input is unreadable: {e}") from e
        text, undecodable = _decode(raw)
        self.rejects.extend((line, UNDECODABLE) for line in undecodable)

        lines = io.StringIO(text, newline="")
        log = self._parse_csv(lines) if self.fmt == "csv" else self._parse_jsonl(lines)

        self.rejects.sort(key=lambda item: item[0])
        report = ParseReport(
            accepted=len(log),
            rejected=len(self.rejects),
            rejects=[RowReject(line=line, reason=reason) for line, reason in self.rejects],
            warnings=self.warnings,
        )
        logger.info("Parsed %d case(s), rejected %d line(s)", report.accepted, report.rejected)
        return log, report

    def _reject(self, line: int, reason: str) -> None:
        logger.debug("Rejected line %d: %s", line, reason)
        self.rejects.append((line, reason))

    def _parse_csv(self, text: IO[str]) -> CaseLog:
        reader = csv.reader(text)
        header = next((row for row in reader if any(cell.strip() for cell in row)), None)
        if header is None:
            raise FatalParseError("missing header: input is empty")

        columns = [cell.strip().lower() for cell in header]
        missing = [c for c in REQUIRED_COLUMNS if c not in columns]
        if missing:
            raise FatalParseError(
                f"missing header column(s) {', '.join(missing)}; expected {','.join(REQUIRED_COLUMNS)}"
            )
        extra = [c for c in columns if c not in REQUIRED_COLUMNS]
        if extra:
            self.warnings.append(f"ignoring extra column(s): {', '.join(extra)}")

        pid_at, cid_at, dur_at, status_at = (columns.index(c) for c in REQUIRED_COLUMNS)
        width = len(columns)

        # One pass collecting raw cells column-wise; validation is vectorized below.
        pids: List[str] = []
        cids: List[str] = []
        durations: List[str] = []
        statuses: List[str] = []
        line_numbers: List[int] = []
        add_pid, add_cid, add_duration = pids.append, cids.append, durations.append
        add_status, add_line = statuses.append, line_numbers.append
        for row in reader:
            if len(row) == width:
                add_pid(row[pid_at])
                add_cid(row[cid_at])
                add_duration(row[dur_at])
                add_status(row[status_at])
                add_line(reader.line_num)
            elif any(cell.strip() for cell in row):
                self._reject(reader.line_num, f"expected {width} fields, got {len(row)}")

        return self._validated(pids, cids, durations, statuses, line_numbers, skip_blank=True)

    def _validated(
        self,
        pids: List[str],
        cids: List[str],
        durations: List[Union[str, float]],
        statuses: List[str],
        line_numbers: List[int],
        skip_blank: bool = False,
    ) -> CaseLog:
        n = len(pids)
        pids = list(map(str.strip, pids))
        cids = list(map(str.strip, cids))
        statuses = list(map(str.strip, statuses))
        try:
            seconds = np.fromiter(map(float, durations), dtype=np.float64, count=n)
        except (OverflowError, TypeError, ValueError):
            seconds = np.fromiter(map(_seconds_or_nan, durations), dtype=np.float64, count=n)

        ok = np.isfinite(seconds)
        ok[ok] = seconds[ok] > 0
        for column in (pids, cids, statuses):
            if not all(column):
                ok &= np.fromiter(map(bool, column), dtype=bool, count=n)
        if ok.all():
            return CaseLog(pids, cids, seconds, statuses)

        for i in np.flatnonzero(~ok).tolist():
            if skip_blank and not (pids[i] or cids[i] or statuses[i] or str(durations[i]).strip()):
                continue
            self._reject(line_numbers[i], field_problem(pids[i], cids[i], durations[i], statuses[i]))
        keep = np.flatnonzero(ok).tolist()
        return CaseLog(
            [pids[i] for i in keep],
            [cids[i] for i in keep],
            seconds[ok],
            [statuses[i] for i in keep],
        )

    def _parse_jsonl(self, text: IO[str]) -> CaseLog:
        extra: Set[str] = set()
        pids: List[str] = []
        cids: List[str] = []
        durations: List[Union[str, float]] = []
        statuses: List[str] = []
        line_numbers: List[int] = []
        for line, raw in enumerate(text, start=1):
            if not raw.strip():
                continue
            try:
                obj = json.loads(raw)
            except json.JSONDecodeError as e:
                self._reject(line, f"invalid JSON: {e.msg}")
                continue
            if not isinstance(obj, dict):
                self._reject(line, "expected a JSON object")
                continue
            missing = [c for c in REQUIRED_COLUMNS if c not in obj]
            if missing:
                self._reject(line, f"missing field(s): {', '.join(missing)}")
                continue
            extra.update(k for k in obj if k not in REQUIRED_COLUMNS)

            fields = [obj[c] for c in REQUIRED_COLUMNS]
            if any(isinstance(v, (bool, list, dict)) or v is None for v in fields):
                self._reject(line, "fields must be strings or numbers")
                continue
            pid, cid, duration, status = fields
            pids.append(str(pid))
            cids.append(str(cid))
            durations.append(duration)
            statuses.append(str(status))
            line_numbers.append(line)

        if extra:
            self.warnings.append(f"ignoring extra field(s): {', '.join(sorted(extra))}")
        return self._validated(pids, cids, durations, statuses, line_numbers)


def _seconds_or_nan(value: Union[str, float]) -> float:
    try:
        return float(value)
    except (OverflowError, TypeError, ValueError):
        return math.nan


def field_problem(
    process_id: str,
    case_id: str,
    duration: Union[str, float],
    status: str,
) -> Optional[str]:
    """Why one row's stripped fields cannot form a case.

    Returns:
        The rejection reason, or None when the fields are acceptable
    """
    if not process_id:
        return "missing process_id"
    if not case_id:
        return "missing case_id"
    if not status:
        return "missing status"
    try:
        seconds = float(duration)
    except (TypeError, ValueError):
        return f"duration is not a number: {duration!r}"
    except OverflowError:
        return "non-finite duration"
    if not math.isfinite(seconds):
        return "non-finite duration"
    if seconds <= 0:
        return "non-positive duration"
    return None


def _decode(raw: Union[str, bytes]) -> Tuple[str, List[int]]:
    """Text of the input plus the physical line numbers that failed to decode.

    An undecodable line is replaced by an empty line, so line numbers of
    the remaining lines are unchanged.
    """
    if isinstance(raw, str):
        return raw.removeprefix("\ufeff"), []
    raw = raw.removeprefix(codecs.BOM_UTF8)
    try:
        return raw.decode("utf-8"), []
    except UnicodeDecodeError:
        pass

    parts: List[str] = []
    undecodable: List[int] = []
    for number, line in enumerate(raw.splitlines(keepends=True), start=1):
        try:
            parts.append(line.decode("utf-8"))
        except UnicodeDecodeError:
            undecodable.append(number)
            parts.append("\n")
    return "".join(parts), undecodable


def parse_case_log(stream: IO, fmt: str = "csv") -> Tuple[CaseLog, ParseReport]:
    """Parse a case log stream; see CaseLogParser."""
    return CaseLogParser(fmt).parse(stream)


def detect_format(path: Path, head: bytes) -> str:
    """Guess the log format from the file extension, then the first byte."""
    suffix = path.suffix.lower()
    if suffix in (".jsonl", ".ndjson"):
        return "jsonl"
    if suffix == ".csv":
        return "csv"
    return "jsonl" if head.lstrip().startswith(b"{") else "csv"


def load_case_log(path: Union[str, Path], fmt: str = "auto") -> Tuple[CaseLog, ParseReport]:
    """Open and parse a case log file.

    Args:
        path: File to read
        fmt: ``csv``, ``jsonl`` or ``auto`` (extension, then content sniffing)

    Raises:
        FatalParseError: If the file cannot be opened or parsed at all
    """
    path = Path(path)
    try:
        with path.open("rb") as f:
            if fmt == "auto":
                fmt = detect_format(path, f.read(512))
                f.seek(0)
            return parse_case_log(f, fmt)
    except OSError as e:
        raise FatalParseError(f"cannot read {path}: {e.strerror or e}") from e


def write_case_log(records: Union[CaseLog, Iterable[CaseRecord]], stream: IO[str]) -> int:
    """Write cases as CSV with the canonical header.

    Durations are written with ``repr`` so re-parsing yields identical floats.

    Returns:
        int: Number of cases written
    """
    log = CaseLog.from_records(records)
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(REQUIRED_COLUMNS)
    writer.writerows(zip(log.process_ids, log.case_ids, map(repr, log.durations.tolist()), log.statuses))
    return len(log)
