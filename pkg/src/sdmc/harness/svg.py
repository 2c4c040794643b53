"""Minimal standalone SVG emission: line plots and scatter plots.

No renderer or plotting package involved; the output is a single
self-contained ``<svg>`` document with axes, ticks, and a legend.
"""

from __future__ import annotations

import math

import numpy as np

_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
           "#17becf", "#7f7f7f")

_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 64, 16, 28, 44


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    if hi <= lo:
        return [lo]
    raw = (hi - lo) / n
    mag = 10.0 ** math.floor(math.log10(raw))
    step = min(s * mag for s in (1, 2, 5, 10) if s * mag >= raw)
    first = math.ceil(lo / step) * step
    out = []
    v = first
    while v <= hi + 1e-12 * step:
        out.append(round(v, 12))
        v += step
    return out or [lo]


def _fmt(v: float) -> str:
    if v == 0:
        return "0"
    if abs(v) >= 1e4 or abs(v) < 1e-3:
        return f"{v:.1e}"
    return f"{v:g}"


class _Canvas:
    def __init__(self, width, height, title, x_label, y_label):
        self.w, self.h = width, height
        self.parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
            f'height="{height}" viewBox="0 0 {width} {height}">',
            f'<rect width="{width}" height="{height}" fill="white"/>',
        ]
        if title:
            self.parts.append(
                f'<text x="{width / 2}" y="18" text-anchor="middle" '
                f'font-family="sans-serif" font-size="13">{title}</text>')
        if x_label:
            self.parts.append(
                f'<text x="{(_MARGIN_L + width - _MARGIN_R) / 2}" y="{height - 8}" '
                f'text-anchor="middle" font-family="sans-serif" font-size="11">{x_label}</text>')
        if y_label:
            ym = (_MARGIN_T + height - _MARGIN_B) / 2
            self.parts.append(
                f'<text x="14" y="{ym}" text-anchor="middle" font-family="sans-serif" '
                f'font-size="11" transform="rotate(-90 14 {ym})">{y_label}</text>')

    def finish(self) -> str:
        return "\n".join(self.parts + ["</svg>"]) + "\n"


class _Frame:
    """Maps data coordinates onto the plot viewport."""

    def __init__(self, canvas, x_range, y_range, log_y):
        self.c = canvas
        self.x0, self.x1 = x_range
        self.y0, self.y1 = y_range
        self.log_y = log_y
        self.px0, self.px1 = _MARGIN_L, canvas.w - _MARGIN_R
        self.py0, self.py1 = canvas.h - _MARGIN_B, _MARGIN_T

    def x(self, v):
        span = self.x1 - self.x0 or 1.0
        return self.px0 + (v - self.x0) / span * (self.px1 - self.px0)

    def y(self, v):
        span = self.y1 - self.y0 or 1.0
        return self.py0 + (v - self.y0) / span * (self.py1 - self.py0)

    def axes(self):
        c = self.c
        c.parts.append(
            f'<rect x="{self.px0}" y="{self.py1}" width="{self.px1 - self.px0}" '
            f'height="{self.py0 - self.py1}" fill="none" stroke="#333"/>')
        for tx in _ticks(self.x0, self.x1):
            px = self.x(tx)
            c.parts.append(f'<line x1="{px:.1f}" y1="{self.py0}" x2="{px:.1f}" '
                           f'y2="{self.py0 + 4}" stroke="#333"/>')
            c.parts.append(f'<text x="{px:.1f}" y="{self.py0 + 16}" text-anchor="middle" '
                           f'font-family="sans-serif" font-size="10">{_fmt(tx)}</text>')
        for ty in _ticks(self.y0, self.y1):
            py = self.y(ty)
            label = _fmt(10.0 ** ty) if self.log_y else _fmt(ty)
            c.parts.append(f'<line x1="{self.px0 - 4}" y1="{py:.1f}" x2="{self.px0}" '
                           f'y2="{py:.1f}" stroke="#333"/>')
            c.parts.append(f'<text x="{self.px0 - 6}" y="{py + 3:.1f}" text-anchor="end" '
                           f'font-family="sans-serif" font-size="10">{label}</text>')

    def legend(self, labels):
        for i, label in enumerate(labels):
            color = _COLORS[i % len(_COLORS)]
            y = _MARGIN_T + 14 + 14 * i
            x = self.px1 - 150
            self.c.parts.append(f'<line x1="{x}" y1="{y - 4}" x2="{x + 18}" y2="{y - 4}" '
                                f'stroke="{color}" stroke-width="2"/>')
            self.c.parts.append(f'<text x="{x + 24}" y="{y}" font-family="sans-serif" '
                                f'font-size="11">{label}</text>')


def line_plot(series, path, *, title="", x_label="", y_label="", log_y=False,
              width=720, height=440):
    """Write a multi-series line plot.

    ``series`` is a list of ``(x, y, label)`` triples.  With ``log_y`` the
    vertical axis is log-scaled and non-positive values are clamped to half
    the smallest positive value in the data.
    """
    prepared = []
    floor = None
    if log_y:
        positives = [np.asarray(y, dtype=float) for _, y, _ in series]
        positives = np.concatenate([p[p > 0] for p in positives]) if positives else np.array([])
        floor = float(positives.min()) / 2.0 if positives.size else 1e-12
    for x, y, label in series:
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        if log_y:
            y = np.log10(np.maximum(y, floor))
        prepared.append((x, y, label))

    all_x = np.concatenate([p[0] for p in prepared])
    all_y = np.concatenate([p[1] for p in prepared])
    canvas = _Canvas(width, height, title, x_label, y_label)
    frame = _Frame(canvas, (all_x.min(), all_x.max()), (all_y.min(), all_y.max()), log_y)
    frame.axes()
    for i, (x, y, _label) in enumerate(prepared):
        color = _COLORS[i % len(_COLORS)]
        pts = " ".join(f"{frame.x(a):.1f},{frame.y(b):.1f}" for a, b in zip(x, y))
        canvas.parts.append(f'<polyline points="{pts}" fill="none" stroke="{color}" '
                            f'stroke-width="1.5"/>')
    frame.legend([label for _, _, label in prepared])
    with open(path, "w") as fh:
        fh.write(canvas.finish())


def scatter_plot(groups, path, *, title="", x_label="", y_label="",
                 width=520, height=520):
    """Write a scatter plot of 2-D point groups ``(points, label)``."""
    pts_all = np.vstack([np.asarray(p, dtype=float) for p, _ in groups])
    canvas = _Canvas(width, height, title, x_label, y_label)
    pad_x = (np.ptp(pts_all[:, 0]) or 1.0) * 0.05
    pad_y = (np.ptp(pts_all[:, 1]) or 1.0) * 0.05
    frame = _Frame(canvas,
                   (pts_all[:, 0].min() - pad_x, pts_all[:, 0].max() + pad_x),
                   (pts_all[:, 1].min() - pad_y, pts_all[:, 1].max() + pad_y),
                   log_y=False)
    frame.axes()
    for i, (points, _label) in enumerate(groups):
        color = _COLORS[i % len(_COLORS)]
        for px, py in np.asarray(points, dtype=float):
            canvas.parts.append(f'<circle cx="{frame.x(px):.1f}" cy="{frame.y(py):.1f}" '
                                f'r="2.5" fill="{color}" fill-opacity="0.7"/>')
    frame.legend([label for _, label in groups])
    with open(path, "w") as fh:
        fh.write(canvas.finish())
