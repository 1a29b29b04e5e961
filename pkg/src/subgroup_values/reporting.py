"""Report rows and deterministic emission in CSV, JSON, or text."""

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction

CSV_HEADER = ["p", "d", "e", "H", "T", "u", "N", "bound", "ratio", "lambda_count", "status", "error"]

STATUS_OK = "ok"
STATUS_WINDOW_EMPTY = "window-empty"
STATUS_PERFECT_POWER = "perfect-power"
STATUS_ERROR = "error"


@dataclass(frozen=True)
class ReportRow:
    p: int
    d: int | None
    e: int | None
    H: int
    T: int
    u: int
    N: int | None
    bound: float | None
    ratio: float | None
    lambda_count: int | None
    status: str
    error: str = ""

    def sort_key(self):
        return (self.p, self.d if self.d is not None else -1,
                self.e if self.e is not None else -1, self.H, self.T, self.u)


def format_value(v) -> str:
    """Canonical text for one cell: rationals as num/den, reals with 12
    significant digits, None blank."""
    if v is None:
        return ""
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def _row_cells(row: ReportRow) -> list:
    return [format_value(getattr(row, k)) for k in CSV_HEADER]


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for row in rows:
        w.writerow(_row_cells(row))
    return buf.getvalue()


def rows_to_json(rows) -> str:
    out = []
    for row in rows:
        obj = {}
        for k in CSV_HEADER:
            v = getattr(row, k)
            if isinstance(v, Fraction):
                v = format_value(v)
            elif isinstance(v, float):
                v = float(format_value(v))
            obj[k] = v
        out.append(obj)
    return json.dumps(out, indent=2, sort_keys=False) + "\n"


def rows_to_text(rows) -> str:
    lines = []
    for row in rows:
        cells = [f"{k}={format_value(getattr(row, k))}" for k in CSV_HEADER]
        lines.append(" ".join(cells))
    return "\n".join(lines) + ("\n" if lines else "")


def emit_report(rows, fmt: str = "csv", path: str | None = None) -> str:
    """Render rows in the chosen format; write to path when given.

    Identical rows yield byte-identical output.
    """
    rows = list(rows)
    if fmt == "csv":
        text = rows_to_csv(rows)
    elif fmt == "json":
        text = rows_to_json(rows)
    elif fmt == "text":
        text = rows_to_text(rows)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if path is not None:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    return text


def mapping_to_output(pairs, fmt: str) -> str:
    """Render an ordered list of (key, value) pairs for the simple subcommands."""
    if fmt == "json":
        obj = {}
        for k, v in pairs:
            if isinstance(v, Fraction):
                v = format_value(v)
            elif isinstance(v, float):
                v = float(format_value(v))
            obj[k] = v
        return json.dumps(obj, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([k for k, _ in pairs])
        w.writerow([format_value(v) for _, v in pairs])
        return buf.getvalue()
    if fmt == "text":
        return "".join(f"{k} = {format_value(v)}\n" for k, v in pairs)
    raise ValueError(f"unknown format {fmt!r}")
