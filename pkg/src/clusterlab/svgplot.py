"""Self-contained SVG charts: cluster scatter, silhouette bars, sweep curves.

No plotting dependency; documents are built from deterministic f-strings
(fixed decimal formatting), so identical inputs produce identical bytes,
which makes the files golden-test friendly.
"""

from __future__ import annotations

import numpy as np

from .validation import KSweepResult, SilhouetteReport

PALETTE = (
    "#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#b07aa1",
    "#76b7b2", "#edc948", "#ff9da7", "#9c755f", "#bab0ac",
)

_FONT = 'font-family="Helvetica, Arial, sans-serif"'


def _f(x: float) -> str:
    return f"{x:.2f}"


def _header(width: int, height: int, title: str) -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>',
        f'<text x="{width / 2:.0f}" y="18" text-anchor="middle" font-size="14" '
        f'{_FONT} font-weight="bold">{title}</text>',
    ]


class _Frame:
    """Maps data coordinates onto a pixel plot area and draws the axes."""

    def __init__(self, x0, y0, w, h, xlim, ylim):
        self.x0, self.y0, self.w, self.h = x0, y0, w, h
        self.xmin, self.xmax = xlim
        self.ymin, self.ymax = ylim
        if self.xmax <= self.xmin:
            self.xmax = self.xmin + 1.0
        if self.ymax <= self.ymin:
            self.ymax = self.ymin + 1.0

    def px(self, x: float) -> float:
        return self.x0 + (x - self.xmin) / (self.xmax - self.xmin) * self.w

    def py(self, y: float) -> float:
        return self.y0 + self.h - (y - self.ymin) / (self.ymax - self.ymin) * self.h

    def axes(self, xlabel: str, ylabel: str, ticks: int = 5) -> list[str]:
        out = [
            f'<rect x="{self.x0}" y="{self.y0}" width="{self.w}" height="{self.h}" '
            'fill="none" stroke="#333333" stroke-width="1"/>'
        ]
        for i in range(ticks):
            fx = self.xmin + (self.xmax - self.xmin) * i / (ticks - 1)
            px = self.px(fx)
            out.append(
                f'<line x1="{_f(px)}" y1="{self.y0 + self.h}" x2="{_f(px)}" '
                f'y2="{self.y0 + self.h + 4}" stroke="#333333"/>'
            )
            out.append(
                f'<text x="{_f(px)}" y="{self.y0 + self.h + 16}" text-anchor="middle" '
                f'font-size="10" {_FONT}>{fx:.2f}</text>'
            )
            fy = self.ymin + (self.ymax - self.ymin) * i / (ticks - 1)
            py = self.py(fy)
            out.append(
                f'<line x1="{self.x0 - 4}" y1="{_f(py)}" x2="{self.x0}" '
                f'y2="{_f(py)}" stroke="#333333"/>'
            )
            out.append(
                f'<text x="{self.x0 - 7}" y="{_f(py + 3)}" text-anchor="end" '
                f'font-size="10" {_FONT}>{fy:.2f}</text>'
            )
        out.append(
            f'<text x="{self.x0 + self.w / 2:.0f}" y="{self.y0 + self.h + 32}" '
            f'text-anchor="middle" font-size="12" {_FONT}>{xlabel}</text>'
        )
        out.append(
            f'<text x="14" y="{self.y0 + self.h / 2:.0f}" text-anchor="middle" '
            f'font-size="12" {_FONT} transform="rotate(-90 14 '
            f'{self.y0 + self.h / 2:.0f})">{ylabel}</text>'
        )
        return out


def _limits(values: np.ndarray, pad: float = 0.05) -> tuple[float, float]:
    if values.size == 0:
        return 0.0, 1.0
    lo, hi = float(values.min()), float(values.max())
    if hi == lo:
        return lo - 0.5, hi + 0.5
    span = hi - lo
    return lo - pad * span, hi + pad * span


def scatter_svg(coords, labels, centers=None, axis_variance=None,
                title="Cluster scatter") -> str:
    """Scatter of 2-D projected points colored by cluster.

    ``centers``: optional (k, 2) projected centroid/medoid positions drawn
    as cross markers. ``axis_variance``: per-axis explained-variance
    fractions shown in the axis labels.
    """
    coords = np.asarray(coords, dtype=np.float64).reshape(-1, 2)
    labels = np.asarray(labels, dtype=np.int64).reshape(-1)
    width, height = 640, 480
    frame = _Frame(60, 40, width - 90, height - 110,
                   _limits(coords[:, 0]), _limits(coords[:, 1]))

    if axis_variance is not None:
        xlabel = f"PC1 ({100.0 * axis_variance[0]:.1f}% variance)"
        ylabel = f"PC2 ({100.0 * axis_variance[1]:.1f}% variance)"
    else:
        xlabel, ylabel = "x", "y"

    out = _header(width, height, title)
    out += frame.axes(xlabel, ylabel)
    for (x, y), lab in zip(coords, labels):
        color = PALETTE[int(lab) % len(PALETTE)]
        out.append(
            f'<circle class="pt" cx="{_f(frame.px(x))}" cy="{_f(frame.py(y))}" '
            f'r="3" fill="{color}" fill-opacity="0.75"/>'
        )
    if centers is not None:
        for cx, cy in np.asarray(centers, dtype=np.float64).reshape(-1, 2):
            px, py = frame.px(cx), frame.py(cy)
            out.append(
                f'<path class="center" d="M {_f(px - 5)} {_f(py - 5)} '
                f'L {_f(px + 5)} {_f(py + 5)} M {_f(px - 5)} {_f(py + 5)} '
                f'L {_f(px + 5)} {_f(py - 5)}" stroke="#000000" stroke-width="2.5" '
                'fill="none"/>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def silhouette_svg(report: SilhouetteReport, title="Silhouette plot") -> str:
    """Horizontal silhouette bars, widest first within each cluster, with the
    overall mean as a dashed reference line and per-cluster mean labels."""
    n = report.widths.shape[0]
    width, height = 640, 480
    xmin = min(0.0, float(report.widths.min()) if n else 0.0)
    frame = _Frame(60, 40, width - 200, height - 110, (xmin, 1.0), (0.0, 1.0))

    out = _header(width, height, title)
    out += frame.axes("silhouette width", "points by cluster")
    bar_h = frame.h / n if n else 0.0
    zero_px = frame.px(0.0)

    rank = 0
    boundaries = np.cumsum(report.cluster_sizes)
    for idx in report.plot_order:
        cluster = int(np.searchsorted(boundaries, rank, side="right"))
        w = float(report.widths[idx])
        x_px = frame.px(min(0.0, w))
        y_px = frame.y0 + rank * bar_h
        out.append(
            f'<rect class="bar" x="{_f(x_px)}" y="{_f(y_px)}" '
            f'width="{_f(abs(frame.px(w) - zero_px))}" height="{_f(max(bar_h, 0.1))}" '
            f'fill="{PALETTE[cluster % len(PALETTE)]}"/>'
        )
        rank += 1

    # per-cluster mean annotations beside each block of bars
    start = 0
    for c, size in enumerate(report.cluster_sizes):
        mid = frame.y0 + (start + size / 2.0) * bar_h
        out.append(
            f'<text x="{frame.x0 + frame.w + 10}" y="{_f(mid + 3)}" font-size="11" '
            f'{_FONT}>cluster {report.cluster_labels[c]}: '
            f'{report.cluster_means[c]:.3f} (n={size})</text>'
        )
        start += size

    mean_px = frame.px(float(report.overall))
    out.append(
        f'<line class="mean" x1="{_f(mean_px)}" y1="{frame.y0}" x2="{_f(mean_px)}" '
        f'y2="{frame.y0 + frame.h}" stroke="#d62728" stroke-width="1.5" '
        'stroke-dasharray="5,3"/>'
    )
    out.append(
        f'<text x="{_f(mean_px + 4)}" y="{frame.y0 + 12}" font-size="11" '
        f'{_FONT} fill="#d62728">mean {report.overall:.3f}</text>'
    )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def sweep_svg(sweep: KSweepResult, title="Cluster-count sweep") -> str:
    """Two stacked panels: average silhouette vs k (best k marked) and the
    within-cluster objective vs k (the elbow curve)."""
    if len(sweep.ks) < 2:
        raise ValueError("sweep plot needs at least 2 k values")
    width, height = 640, 640
    ks = np.asarray(sweep.ks, dtype=np.float64)
    sil = np.asarray(sweep.avg_silhouette, dtype=np.float64)
    wss = np.asarray(sweep.wss, dtype=np.float64)

    top = _Frame(60, 40, width - 90, 230, _limits(ks, 0.02), _limits(sil))
    bottom = _Frame(60, 360, width - 90, 230, _limits(ks, 0.02), _limits(wss))

    out = _header(width, height, title)
    out += top.axes("k", "average silhouette")
    out += bottom.axes("k", "within-cluster sum of squares")

    for frame, ys, cls in ((top, sil, "sil"), (bottom, wss, "wss")):
        pts = " ".join(
            f"{_f(frame.px(k))},{_f(frame.py(v))}" for k, v in zip(ks, ys)
        )
        out.append(
            f'<polyline class="{cls}" points="{pts}" fill="none" '
            'stroke="#4e79a7" stroke-width="2"/>'
        )
        for k, v in zip(ks, ys):
            out.append(
                f'<circle class="{cls}-pt" cx="{_f(frame.px(k))}" '
                f'cy="{_f(frame.py(v))}" r="3.5" fill="#4e79a7"/>'
            )

    best_i = sweep.ks.index(sweep.best_k)
    bx, by = top.px(float(sweep.best_k)), top.py(sil[best_i])
    out.append(
        f'<circle class="best" cx="{_f(bx)}" cy="{_f(by)}" r="7" fill="none" '
        'stroke="#d62728" stroke-width="2"/>'
    )
    out.append(
        f'<text x="{_f(bx + 10)}" y="{_f(by - 8)}" font-size="11" {_FONT} '
        f'fill="#d62728">best k = {sweep.best_k} '
        f'({sil[best_i]:.3f})</text>'
    )
    out.append("</svg>")
    return "\n".join(out) + "\n"
