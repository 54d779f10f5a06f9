"""CSV / JSON encoding of result tables.

Floats use Python's shortest round-trip repr in both encodings, so a value
read back from either is bit-identical.  Infinite bounds are written as
``-inf``/``inf`` in CSV and ``null`` in JSON; missing values are empty / ``null``.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Any, Sequence


def _plain(v: Any) -> Any:
    if v is None or isinstance(v, (bool, str)):
        return v
    if isinstance(v, int) and not isinstance(v, bool):
        return int(v)
    if isinstance(v, Fraction):
        return float(v)
    if hasattr(v, "item"):  # numpy scalars
        return _plain(v.item())
    return float(v)


def _csv_cell(v: Any) -> str:
    v = _plain(v)
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _json_cell(v: Any) -> Any:
    v = _plain(v)
    if isinstance(v, float) and not math.isfinite(v):
        return None
    return v


def to_csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    lines = [",".join(header)]
    lines += [",".join(_csv_cell(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def to_json(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    records = [{k: _json_cell(v) for k, v in zip(header, row)} for row in rows]
    return json.dumps(records, indent=2) + "\n"


def encode(header: Sequence[str], rows: Sequence[Sequence[Any]], fmt: str) -> str:
    if fmt == "csv":
        return to_csv(header, rows)
    if fmt == "json":
        return to_json(header, rows)
    raise ValueError(f"unknown format {fmt!r}")
