"""
File outputs: per-iteration trace CSV, summary/sweep CSV tables and a
standalone SVG convergence chart.

Floats are written with 17 significant digits so they parse back to the
identical double.
"""

from __future__ import annotations

import csv
import math
from collections.abc import Mapping
from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

from .results import RunRecord

__all__ = [
    "LOG_FLOOR",
    "TRACE_HEADER",
    "SUMMARY_HEADER",
    "OutputError",
    "mean_trace",
    "read_trace_csv",
    "render_convergence_svg",
    "write_summary_csv",
    "write_sweep_csv",
    "write_trace_csv",
]

TRACE_HEADER = ("run", "iteration", "best_fitness", "visual", "step", "mw")
SUMMARY_HEADER = ("function", "dimension", "algorithm", "runs", "best", "mean", "std_dev",
                  "solved_fraction")
SWEEP_HEADER = ("mw", "runs", "best", "mean", "std_dev", "solved_fraction")

# Non-positive values are drawn here on a log axis.
LOG_FLOOR = 1e-320


class OutputError(OSError):
    """Writing an output file failed."""


def fmt(x) -> str:
    return format(float(x), ".17g")


def _open_for_write(path):
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        return open(path, "w", newline="", encoding="utf-8")
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc.strerror or exc}") from exc


def write_trace_csv(records, path):
    """One row per (run, iteration), sorted by run then iteration."""
    with _open_for_write(path) as fh:
        w = csv.writer(fh)
        w.writerow(TRACE_HEADER)
        for rec in sorted(records, key=lambda r: r.run_index):
            for t, best, vis, stp, mw in rec.rows():
                w.writerow((rec.run_index, t, fmt(best), fmt(vis), fmt(stp), fmt(mw)))
    return Path(path)


def read_trace_csv(path):
    """Parse a trace CSV back into ``{run: structured array}``."""
    runs = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = tuple(next(reader))
        if header != TRACE_HEADER:
            raise ValueError(f"unexpected trace header {header}")
        for row in reader:
            runs.setdefault(int(row[0]), []).append(
                (int(row[1]),) + tuple(float(v) for v in row[2:]))
    dtype = [("iteration", "i8"), ("best_fitness", "f8"), ("visual", "f8"), ("step", "f8"),
             ("mw", "f8")]
    return {r: np.array(rows, dtype=dtype) for r, rows in runs.items()}


def write_summary_csv(rows, path):
    """`rows` are :class:`~fishswarm.harness.CompareRow` objects."""
    with _open_for_write(path) as fh:
        w = csv.writer(fh)
        w.writerow(SUMMARY_HEADER)
        for r in rows:
            s = r.summary
            w.writerow((r.function, r.dimension, r.algorithm, r.runs, fmt(s.best), fmt(s.mean),
                        fmt(s.std_dev), fmt(s.solved_fraction)))
    return Path(path)


def write_sweep_csv(sweep, path):
    with _open_for_write(path) as fh:
        w = csv.writer(fh)
        w.writerow(SWEEP_HEADER)
        for mw, s in sweep.rows:
            w.writerow((fmt(mw), s.runs, fmt(s.best), fmt(s.mean), fmt(s.std_dev),
                        fmt(s.solved_fraction)))
    return Path(path)


def mean_trace(records) -> np.ndarray:
    """Per-iteration mean of the best-so-far value across runs."""
    return np.mean(np.vstack([r.best_fitness for r in records]), axis=0)


_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2",
            "#7f7f7f", "#bcbd22", "#17becf")


def _as_series(series):
    if isinstance(series, RunRecord):
        series = [series]
    if isinstance(series, Mapping):
        items = list(series.items())
    else:
        items = [(f"run {r.run_index}", r) for r in series]
    out = []
    for name, s in items:
        y = s.best_fitness if isinstance(s, RunRecord) else s
        out.append((str(name), np.asarray(y, dtype=np.float64)))
    return out


def render_convergence_svg(series, path, log_scale=True, title="Convergence",
                           width=720, height=440):
    """
    Write a line chart of best fitness against iteration.

    Parameters
    ----------
    series : RunRecord, sequence of RunRecord, or mapping
        A mapping from legend label to a RunRecord or a 1-D array of
        best-so-far values; a plain sequence of records is labelled by run.
    path : str or Path
        Destination file.
    log_scale : bool, default True
        Plot ``log10`` of the values; values ``<= 0`` are drawn at
        ``LOG_FLOOR`` and the legend says so.
    """
    data = _as_series(series)
    if not data:
        raise ValueError("nothing to plot")

    floored = set()
    ys = []
    for name, y in data:
        if log_scale:
            bad = ~(y > 0)
            if bad.any():
                floored.add(name)
            y = np.log10(np.where(bad, LOG_FLOOR, y))
        ys.append(y)

    finite = np.concatenate([y[np.isfinite(y)] for y in ys])
    ymin, ymax = (float(finite.min()), float(finite.max())) if finite.size else (0.0, 1.0)
    if ymax - ymin < 1e-12:
        ymin, ymax = ymin - 1.0, ymax + 1.0
    xmax = max(max(len(y) - 1 for y in ys), 1)

    left, right, top, bottom = 70, 190, 40, 50
    pw, ph = width - left - right, height - top - bottom

    def px(t):
        return left + pw * t / xmax

    def py(v):
        return top + ph * (ymax - v) / (ymax - ymin)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<text x="{left + pw / 2}" y="22" text-anchor="middle" font-family="sans-serif" '
        f'font-size="15">{escape(title)}</text>',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for k in range(6):
        v = ymin + (ymax - ymin) * k / 5
        label = f"1e{v:.0f}" if log_scale else f"{v:.3g}"
        parts.append(f'<text x="{left - 6}" y="{py(v) + 4:.2f}" text-anchor="end" '
                     f'font-family="sans-serif" font-size="11">{label}</text>')
        t = xmax * k / 5
        parts.append(f'<text x="{px(t):.2f}" y="{top + ph + 16}" text-anchor="middle" '
                     f'font-family="sans-serif" font-size="11">{t:.0f}</text>')
    parts.append(f'<text x="{left + pw / 2}" y="{height - 12}" text-anchor="middle" '
                 f'font-family="sans-serif" font-size="12">iteration</text>')
    ylabel = "log10 best fitness" if log_scale else "best fitness"
    parts.append(f'<text x="16" y="{top + ph / 2}" text-anchor="middle" font-family="sans-serif" '
                 f'font-size="12" transform="rotate(-90 16 {top + ph / 2})">{ylabel}</text>')

    for k, ((name, _), y) in enumerate(zip(data, ys)):
        colour = _PALETTE[k % len(_PALETTE)]
        pts = " ".join(f"{px(t):.2f},{py(v):.2f}" for t, v in enumerate(y) if math.isfinite(v))
        parts.append(f'<polyline class="series" data-name="{escape(name, {chr(34): "&quot;"})}" '
                     f'fill="none" stroke="{colour}" stroke-width="1.5" points="{pts}"/>')
        ly = top + 14 + 18 * k
        label = name + (" (<=0 at floor)" if name in floored else "")
        parts.append(f'<g class="legend-entry"><line x1="{left + pw + 12}" y1="{ly - 4}" '
                     f'x2="{left + pw + 32}" y2="{ly - 4}" stroke="{colour}" stroke-width="2"/>'
                     f'<text x="{left + pw + 38}" y="{ly}" font-family="sans-serif" '
                     f'font-size="11">{escape(label)}</text></g>')
    if floored:
        parts.append(f'<text x="{left + pw + 12}" y="{top + ph}" font-family="sans-serif" '
                     f'font-size="10">floor = {LOG_FLOOR:g}</text>')
    parts.append("</svg>")

    with _open_for_write(path) as fh:
        fh.write("\n".join(parts) + "\n")
    return Path(path)
