"""CSV/JSON serialisation of sweep records and point reports."""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path
from typing import Sequence

from .entanglement import MEASURE_KEYS
from .sweep import Axis, SweepRecord

NA = "NA"


def fmt(x):
    """Full-precision scientific notation; ``NA`` for missing values."""
    if x is None:
        return NA
    if isinstance(x, bool):
        return "1" if x else "0"
    if math.isnan(x):
        return "NaN"
    return f"{x:.17e}"


def csv_header(axes: Sequence[Axis]):
    cols = []
    for ax in axes:
        cols += [ax.column, ax.param.value]
    return cols + ["stable", "max_real_part"] + list(MEASURE_KEYS)


def flatten(records):
    if records and isinstance(records[0], list):
        return [r for row in records for r in row]
    return list(records)


def csv_text(records, axes: Sequence[Axis]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(csv_header(axes))
    for rec in flatten(records):
        row = []
        for norm, raw in rec.coords:
            row += [fmt(norm), fmt(raw)]
        row += [fmt(rec.stable), fmt(rec.max_real_part)]
        row += [fmt(rec.values[k]) for k in MEASURE_KEYS]
        w.writerow(row)
    return buf.getvalue()


def record_dict(rec: SweepRecord, axes: Sequence[Axis] = ()):
    d = {}
    for ax, (norm, raw) in zip(axes, rec.coords):
        d[ax.column] = norm
        d[ax.param.value] = raw
    d["stable"] = rec.stable
    d["max_real_part"] = _json_num(rec.max_real_part)
    d.update({k: _json_num(rec.values[k]) for k in MEASURE_KEYS})
    if rec.flags:
        d["flags"] = dict(rec.flags)
    if rec.error:
        d["error"] = rec.error
    return d


def _json_num(x):
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return None
    return x


def json_text(records, axes: Sequence[Axis]) -> str:
    rows = [record_dict(r, axes) for r in flatten(records)]
    return json.dumps({"columns": csv_header(axes), "records": rows}, indent=1) + "\n"


def write_records(path, records, axes, fmt_name="csv"):
    path = Path(path)
    text = csv_text(records, axes) if fmt_name == "csv" else json_text(records, axes)
    path.write_text(text)
    return path


PLOT_TEMPLATE = '''"""Plot {csv_name} (generated alongside the data)."""
import sys

import matplotlib.pyplot as plt
import numpy as np
import pandas as pd

df = pd.read_csv("{csv_name}", na_values=["NA"])
measures = {measures!r}
x = df.columns[0]
{body}
out = sys.argv[1] if len(sys.argv) > 1 else "{png_name}"
plt.savefig(out, dpi=150, bbox_inches="tight")
'''

_BODY_1D = '''fig, ax = plt.subplots()
for m in measures:
    ax.plot(df[x], df[m], label=m)
ax.set_xlabel(x)
ax.legend()
'''

_BODY_2D = '''y = df.columns[2]
nx, ny = df[x].nunique(), df[y].nunique()
fig, axes = plt.subplots(1, len(measures), figsize=(5 * len(measures), 4), squeeze=False)
for ax, m in zip(axes[0], measures):
    Z = df[m].to_numpy().reshape(nx, ny)
    im = ax.pcolormesh(df[y].unique(), df[x].unique(), Z, shading="auto")
    ax.set_xlabel(y)
    ax.set_ylabel(x)
    ax.set_title(m)
    fig.colorbar(im, ax=ax)
'''


def plot_script(csv_path, n_axes, measures) -> str:
    csv_path = Path(csv_path)
    return PLOT_TEMPLATE.format(
        csv_name=csv_path.name,
        png_name=csv_path.with_suffix(".png").name,
        measures=list(measures),
        body=_BODY_1D if n_axes == 1 else _BODY_2D,
    )


def write_plot_script(csv_path, n_axes, measures):
    csv_path = Path(csv_path)
    target = csv_path.with_name(csv_path.stem + "_plot.py")
    target.write_text(plot_script(csv_path, n_axes, measures))
    return target
