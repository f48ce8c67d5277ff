"""Report serialization (CSV / JSON) and the figure datasets.

Numbers are written with 17 significant digits so that files round-trip
exactly and are byte-identical across runs.
"""

import csv
import io
import math
import os
import sys
from dataclasses import asdict, is_dataclass

import numpy as np

from .errors import UsageError
from .exact import exact_joint_cdf, exact_joint_pdf
from .expansions import ApproxOrder, approx_joint_cdf, approx_joint_pdf
from .gmd import GmdParams
from .lab import ERROR_COLUMNS, error_table
from .norming import solve_norming

FIG_POINT = (2.0, 6.0)
FIG_N_GRID = tuple(sorted({int(round(v)) for v in np.logspace(1, 4, 31)}))
FIG2_SHAPES = (0.5, 1.0, 1.5, 6.0)
FIG_PANEL_N = 500
FIG_PANEL_K = 1.0
FIG_PANEL_GRID = tuple(float(v) for v in np.linspace(-2.0, 10.0, 49))
# panel -> (fixed coordinate name, fixed value)
FIG_PANELS = {"a": ("y", 2.0), "b": ("y", 10.0), "c": ("x", 2.0), "d": ("x", 10.0)}


def fmt_number(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    return format(float(value), ".17g")


def _as_row(record):
    if is_dataclass(record):
        return asdict(record)
    return dict(record)


def _json_value(value, indent, level):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f'{pad}"{key}": {_json_value(v, indent, level + 1)}' for key, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        if all(isinstance(v, (int, float)) for v in value):
            return "[" + ", ".join(_json_value(v, indent, level) for v in value) + "]"
        return "[\n" + ",\n".join(pad + _json_value(v, indent, level + 1) for v in value) + "\n" + end + "]"
    if isinstance(value, str):
        return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if value is None:
        return "null"
    if isinstance(value, float) and not math.isfinite(value):
        return "null"
    return fmt_number(value)


def dumps_json(obj):
    if is_dataclass(obj):
        obj = obj.to_dict() if hasattr(obj, "to_dict") else asdict(obj)
    elif isinstance(obj, list):
        obj = [o.to_dict() if hasattr(o, "to_dict") else _as_row(o) if is_dataclass(o) else o for o in obj]
    return _json_value(obj, 2, 0) + "\n"


def dumps_csv(records, columns=None):
    rows = [_as_row(r) for r in records]
    if columns is None:
        columns = list(rows[0])
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([
            fmt_number(row[c]) if isinstance(row[c], (int, float)) else row[c] for c in columns
        ])
    return buf.getvalue()


def write_report(records, format="csv", path=None, columns=None):
    """Write records as CSV or JSON to ``path`` ('-' or None for stdout)."""
    records = list(records)
    if not records:
        raise UsageError("refusing to write an empty report")
    if format == "csv":
        text = dumps_csv(records, columns)
    elif format == "json":
        if columns is not None:
            records = [{c: _as_row(r)[c] for c in columns} for r in records]
        text = dumps_json(records)
    else:
        raise UsageError(f"unknown report format {format!r}; use csv or json")
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    with open(path, "w", newline="") as fh:
        fh.write(text)


# --- figure datasets ---------------------------------------------------------

def _vs_n_rows(p, x, y, n_grid, sides):
    rows = []
    for n in n_grid:
        nm = solve_norming(p, n)
        row = {"n": n}
        if "cdf" in sides:
            row["exact_cdf"] = exact_joint_cdf(p, nm, (x, y))
            for o in ApproxOrder:
                row[f"s{int(o)}"] = approx_joint_cdf(p, nm, x, y, o)
        if "pdf" in sides:
            row["exact_pdf"] = exact_joint_pdf(p, nm, (x, y))
            for o in ApproxOrder:
                row[f"t{int(o)}"] = approx_joint_pdf(p, nm, x, y, o)
        rows.append(row)
    return rows


def figure_datasets(which, sigma=1.0):
    """Return {file stem: (rows, columns)} for figure 1, 2, 3 or 4."""
    x, y = FIG_POINT
    out = {}
    if which == 1:
        p = GmdParams(1.0, sigma)
        # k = 1 only; both the cdf and the pdf side, so either panel can be drawn
        out["fig1"] = (
            _vs_n_rows(p, x, y, FIG_N_GRID, ("cdf", "pdf")),
            ["n", "exact_cdf", "s1", "s2", "s3", "exact_pdf", "t1", "t2", "t3"],
        )
    elif which == 2:
        for k in FIG2_SHAPES:
            p = GmdParams(k, sigma)
            out[f"fig2_k{k:.1f}"] = (
                _vs_n_rows(p, x, y, FIG_N_GRID, ("pdf",)),
                ["n", "exact_pdf", "t1", "t2", "t3"],
            )
    elif which in (3, 4):
        p = GmdParams(FIG_PANEL_K, sigma)
        for panel, (fixed, value) in FIG_PANELS.items():
            if fixed == "y":
                rows = error_table(p, [FIG_PANEL_N], FIG_PANEL_GRID, [value])
            else:
                rows = error_table(p, [FIG_PANEL_N], [value], FIG_PANEL_GRID)
            out[f"fig{which}_{panel}"] = (rows, list(ERROR_COLUMNS))
    else:
        raise UsageError(f"figure must be 1, 2, 3 or 4, got {which}")
    return out


def write_figures(which, out_dir, sigma=1.0, plot=False):
    """Write CSV datasets for the requested figures; optionally render PNGs."""
    os.makedirs(out_dir, exist_ok=True)
    figures = (1, 2, 3, 4) if which == "all" else (int(which),)
    written = []
    for fig in figures:
        datasets = figure_datasets(fig, sigma)
        for stem, (rows, columns) in datasets.items():
            path = os.path.join(out_dir, stem + ".csv")
            write_report(rows, "csv", path, columns)
            written.append(path)
        if plot:
            from .plotting import render_figure

            written.append(render_figure(fig, datasets, out_dir))
    return written
