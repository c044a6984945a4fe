"""Matrix ingest and emission in CSV and JSON.

CSV holds N rows of N comma-separated decimals. JSON holds
``{"labels": [...], "rows": [[...], ...]}``. Matrices are written with
``repr`` precision so a round trip reproduces the same doubles.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Iterable, Sequence, TextIO

import numpy as np

from .chain import TransitionMatrix, validate
from .config import DEFAULT, Tolerances
from .errors import ParseError


def parse_csv(text: str) -> np.ndarray:
    rows: list[list[float]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        row = []
        col = 1
        for cell in line.split(","):
            try:
                row.append(float(cell))
            except ValueError:
                raise ParseError(f"not a number: {cell.strip()!r}", lineno, col) from None
            col += len(cell) + 1
        if rows and len(row) != len(rows[0]):
            raise ParseError(f"expected {len(rows[0])} fields, found {len(row)}", lineno)
        rows.append(row)
    if not rows:
        raise ParseError("empty matrix")
    return np.array(rows, dtype=float)


def parse_json(text: str) -> tuple[list[str] | None, np.ndarray]:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(obj, dict) or "rows" not in obj:
        raise ParseError('expected an object with a "rows" field')
    rows = obj["rows"]
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ParseError('"rows" must be a non-empty list of lists')
    width = len(rows[0])
    for i, r in enumerate(rows):
        if len(r) != width:
            raise ParseError(f"row {i} has {len(r)} entries, expected {width}")
        for j, v in enumerate(r):
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise ParseError(f"row {i}, entry {j} is not a number: {v!r}")
    labels = obj.get("labels")
    if labels is not None and (not isinstance(labels, list) or len(labels) != len(rows)):
        raise ParseError('"labels" must be a list with one entry per row')
    return labels, np.array(rows, dtype=float)


def load_matrix(path: str | Path, tol: Tolerances = DEFAULT) -> TransitionMatrix:
    """Read a CSV or JSON file (chosen by suffix, ``.json`` or anything else)."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text, fmt="json" if path.suffix.lower() == ".json" else "csv", tol=tol)


def loads(text: str, fmt: str = "csv", tol: Tolerances = DEFAULT) -> TransitionMatrix:
    if fmt == "json":
        labels, a = parse_json(text)
        return validate(a, labels, tol)
    if fmt == "csv":
        return validate(parse_csv(text), tol=tol)
    raise ValueError(f"unknown format {fmt!r}")


def _num(x: float) -> str:
    return repr(float(x))


def dumps(P: TransitionMatrix, fmt: str = "csv") -> str:
    if fmt == "csv":
        return "".join(",".join(_num(v) for v in row) + "\n" for row in P.entries)
    if fmt == "json":
        return json.dumps({"labels": list(P.labels), "rows": P.entries.tolist()}) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def fmt12(x: float) -> str:
    """Fixed 12-significant-digit rendering used by every table."""
    x = float(x)
    if x != x:
        return "nan"
    if x in (float("inf"), float("-inf")):
        return "inf" if x > 0 else "-inf"
    out = f"{x:.12g}"
    return "0" if out == "-0" else out


def _cell(v: object) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return fmt12(v)
    if v is None:
        return ""
    return str(v)


def write_table(header: Sequence[str], rows: Iterable[Sequence[object]], out: TextIO | None = None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_cell(v) for v in row])
    text = buf.getvalue()
    if out is not None:
        out.write(text)
    return text
