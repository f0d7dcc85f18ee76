"""
CSV / JSON result files

Both formats carry the same row fields in the same order and are
byte-stable for identical inputs.
"""

import csv
import json
from dataclasses import asdict
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

from bench.fitting import FitReport
from bench.runner import ResultRow
from utils.errors import ConfigError, ResultsWriteError


FIELDS = ("algorithm", "distribution", "params", "n", "trial", "seed",
          "comparisons", "rounds", "wall_seconds")
FORMATS = ("csv", "json")

_INT_FIELDS = {"n", "trial", "seed", "comparisons", "rounds"}


def resolve_format(path: Union[str, Path], fmt: Optional[str] = None) -> str:
    """Explicit format wins; otherwise the file suffix decides (default csv)"""
    chosen = (fmt or Path(path).suffix.lstrip(".") or "csv").lower()
    if chosen not in FORMATS:
        raise ConfigError(f"Unknown results format {chosen!r}; choose csv or json")
    return chosen


def _row_record(row: ResultRow) -> dict:
    return {name: getattr(row, name) for name in FIELDS}


def write_results(
        rows: Sequence[ResultRow],
        fits: Sequence[FitReport],
        path: Union[str, Path],
        fmt: Optional[str] = None
) -> Path:
    """
    Write rows (and, for JSON, fits) to disk

    Args:
        rows: Measurements in the order to write
        fits: Fit reports (JSON only; CSV holds rows)
        path: Destination file; parent directories are created
        fmt: 'csv' or 'json' (defaults from the suffix)

    Returns:
        The written path

    Raises:
        ResultsWriteError: On any I/O failure, with the path in the message
    """
    path = Path(path)
    fmt = resolve_format(path, fmt)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as handle:
            if fmt == "csv":
                writer = csv.writer(handle, lineterminator="\n")
                writer.writerow(FIELDS)
                for row in rows:
                    writer.writerow([getattr(row, name) for name in FIELDS])
            else:
                document = {
                    "rows": [_row_record(row) for row in rows],
                    "fits": [asdict(fit) for fit in fits],
                }
                handle.write(json.dumps(document, indent=2, sort_keys=True) + "\n")
    except OSError as e:
        raise ResultsWriteError(f"Could not write results to {path}: {e}")
    return path


def _parse_row(record: dict) -> ResultRow:
    values = {}
    for name in FIELDS:
        raw = record[name]
        if name in _INT_FIELDS:
            values[name] = int(raw)
        elif name == "wall_seconds":
            values[name] = float(raw)
        else:
            values[name] = str(raw)
    return ResultRow(**values)


def read_results(path: Union[str, Path], fmt: Optional[str] = None) -> Tuple[List[ResultRow], List[dict]]:
    """Load rows (and JSON fits as plain dicts) written by write_results"""
    path = Path(path)
    fmt = resolve_format(path, fmt)
    try:
        with open(path, encoding="utf-8", newline="") as handle:
            if fmt == "csv":
                return [_parse_row(record) for record in csv.DictReader(handle)], []
            document = json.load(handle)
    except OSError as e:
        raise ResultsWriteError(f"Could not read results from {path}: {e}")
    return [_parse_row(record) for record in document["rows"]], list(document["fits"])
