"""Loading of precomputed indicator tables (CSV in table layout, or analyze JSON)."""

import csv
import io
import json
from pathlib import Path
from typing import Dict, Optional, Union

from pydantic import ValidationError

from src.errors import FatalParseError
from src.models.indicator_models import INDICATOR_COLUMNS, IndicatorRow, IndicatorSet, IndicatorTable


def _number(column: str, raw: object) -> float:
    """Parse a cell; a trailing '%' marks a percentage.

    ``sr`` is stored in percent, every other column as a fraction.
    """
    if isinstance(raw, (int, float)) and not isinstance(raw, bool):
        return float(raw)
    text = str(raw).strip()
    percent = text.endswith("%")
    value = float(text.rstrip("%").strip())
    if percent and column != "sr":
        value /= 100.0
    return value


def _row(process_id: str, cells: Dict[str, object]) -> IndicatorRow:
    values = {c: _number(c, cells[c]) for c in INDICATOR_COLUMNS}
    count = cells.get("case_count")
    return IndicatorRow(
        process_id=process_id,
        indicators=IndicatorSet(
            **{c: v for c, v in values.items() if c != "sr"},
            success_rate=values["sr"],
            case_count=int(count) if count not in (None, "") else None,
        ),
    )


def looks_like_indicator_table(head: str) -> bool:
    """True if the start of a file is an indicator table rather than a case log."""
    stripped = head.lstrip()
    if stripped.startswith("{"):
        return '"rows"' in stripped
    first_line = stripped.splitlines()[0] if stripped else ""
    columns = {c.strip().lower() for c in first_line.split(",")}
    return "process_id" in columns and "cv" in columns


def parse_indicator_table(text: str) -> IndicatorTable:
    """Parse an indicator table from CSV or analyze-JSON text.

    Raises:
        FatalParseError: If the text is not a well-formed indicator table
    """
    try:
        if text.lstrip().startswith("{"):
            document = json.loads(text)
            rows = [_row(str(r["process_id"]), r) for r in document["rows"]]
        else:
            reader = csv.DictReader(io.StringIO(text))
            reader.fieldnames = [f.strip().lower() for f in reader.fieldnames or []]
            missing = [c for c in ("process_id", *INDICATOR_COLUMNS) if c not in reader.fieldnames]
            if missing:
                raise FatalParseError(f"indicator table is missing column(s): {', '.join(missing)}")
            rows = [_row(r["process_id"].strip(), r) for r in reader if any(isinstance(v, str) and v.strip() for v in r.values())]
        return IndicatorTable(rows=rows)
    except FatalParseError:
        raise
    except (KeyError, TypeError, ValueError, ValidationError) as e:
        raise FatalParseError(f"malformed indicator table: {e}") from e


def load_indicator_table(path: Union[str, Path], text: Optional[str] = None) -> IndicatorTable:
    """Read an indicator table file."""
    path = Path(path)
    if text is None:
        try:
            text = path.read_text(encoding="utf-8-sig")
        except (OSError, UnicodeDecodeError) as e:
            raise FatalParseError(f"cannot read {path}: {e}") from e
    return parse_indicator_table(text)
