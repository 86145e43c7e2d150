"""Deterministic SVG charts: line, bar and heat map.

Same input, same bytes: fixed canvas, fixed palette, fixed coordinate
formatting, no timestamps. Good enough for report artifacts and byte-level
golden tests; not a plotting library.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConfigError

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b")
HEAT_PALETTE = ("#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2", "#edc948")


@dataclass(frozen=True)
class Series:
    """One named sequence of (x, y) points; None y-values break the line."""

    name: str
    x: tuple[float, ...]
    y: tuple[float | None, ...]

    def __post_init__(self):
        if len(self.x) != len(self.y):
            raise ConfigError("series x and y must align")
        if not self.x:
            raise ConfigError("series must be nonempty")


@dataclass(frozen=True)
class ChartSpec:
    kind: str = "line"  # line | bar
    title: str = ""
    x_label: str = ""
    y_label: str = ""
    log_y: bool = False
    width: int = 800
    height: int = 480

    def __post_init__(self):
        if self.kind not in ("line", "bar"):
            raise ConfigError(f"unknown chart kind {self.kind!r}")


MARGIN_LEFT, MARGIN_RIGHT, MARGIN_TOP, MARGIN_BOTTOM = 70, 20, 40, 50


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    if hi == lo:
        return [lo]
    step = (hi - lo) / (n - 1)
    return [lo + i * step for i in range(n)]


def _svg_header(spec: ChartSpec) -> list[str]:
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{spec.width}" height="{spec.height}" '
        f'viewBox="0 0 {spec.width} {spec.height}">',
        f'<rect x="0" y="0" width="{spec.width}" height="{spec.height}" fill="#ffffff"/>',
    ]
    if spec.title:
        parts.append(
            f'<text x="{spec.width / 2:.1f}" y="24" text-anchor="middle" '
            f'font-family="monospace" font-size="15">{_escape(spec.title)}</text>'
        )
    return parts


def _escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def render_chart(series: list[Series], spec: ChartSpec = ChartSpec()) -> str:
    """Render line or bar chart; returns the SVG document as text."""
    if not series:
        raise ConfigError("need at least one series")
    ys = [v for s in series for v in s.y if v is not None]
    xs = [x for s in series for x in s.x]
    if not ys:
        raise ConfigError("all y values are missing")
    if spec.log_y:
        if any(v <= 0 for v in ys):
            raise ConfigError("log_y requires strictly positive values")
        transform = math.log10
    else:
        transform = lambda v: v
    ty = [transform(v) for v in ys]
    y_lo, y_hi = min(ty), max(ty)
    x_lo, x_hi = min(xs), max(xs)
    if y_hi == y_lo:
        y_lo, y_hi = y_lo - 1.0, y_hi + 1.0
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 1.0, x_hi + 1.0
    plot_w = spec.width - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = spec.height - MARGIN_TOP - MARGIN_BOTTOM

    def px(x: float) -> float:
        return MARGIN_LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w

    def py(v: float) -> float:
        t = transform(v)
        return MARGIN_TOP + (y_hi - t) / (y_hi - y_lo) * plot_h

    parts = _svg_header(spec)
    parts.append(
        f'<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{plot_w}" height="{plot_h}" '
        f'fill="none" stroke="#333333"/>'
    )
    for tick in _ticks(y_lo, y_hi):
        y_pix = MARGIN_TOP + (y_hi - tick) / (y_hi - y_lo) * plot_h
        label = 10**tick if spec.log_y else tick
        parts.append(
            f'<line x1="{MARGIN_LEFT - 4}" y1="{_fmt(y_pix)}" x2="{MARGIN_LEFT}" '
            f'y2="{_fmt(y_pix)}" stroke="#333333"/>'
        )
        parts.append(
            f'<text x="{MARGIN_LEFT - 8}" y="{_fmt(y_pix + 4)}" text-anchor="end" '
            f'font-family="monospace" font-size="11">{label:.4g}</text>'
        )
    for tick in _ticks(x_lo, x_hi):
        x_pix = px(tick)
        parts.append(
            f'<line x1="{_fmt(x_pix)}" y1="{MARGIN_TOP + plot_h}" x2="{_fmt(x_pix)}" '
            f'y2="{MARGIN_TOP + plot_h + 4}" stroke="#333333"/>'
        )
        parts.append(
            f'<text x="{_fmt(x_pix)}" y="{MARGIN_TOP + plot_h + 18}" text-anchor="middle" '
            f'font-family="monospace" font-size="11">{tick:.4g}</text>'
        )
    if spec.x_label:
        parts.append(
            f'<text x="{MARGIN_LEFT + plot_w / 2:.1f}" y="{spec.height - 10}" '
            f'text-anchor="middle" font-family="monospace" font-size="12">{_escape(spec.x_label)}</text>'
        )
    if spec.y_label:
        parts.append(
            f'<text x="16" y="{MARGIN_TOP + plot_h / 2:.1f}" text-anchor="middle" '
            f'font-family="monospace" font-size="12" '
            f'transform="rotate(-90 16 {MARGIN_TOP + plot_h / 2:.1f})">{_escape(spec.y_label)}</text>'
        )

    if spec.kind == "line":
        for si, s in enumerate(series):
            color = PALETTE[si % len(PALETTE)]
            segment: list[str] = []
            segments: list[list[str]] = []
            for x, y in zip(s.x, s.y):
                if y is None:
                    if segment:
                        segments.append(segment)
                    segment = []
                    continue
                segment.append(f"{_fmt(px(x))},{_fmt(py(y))}")
            if segment:
                segments.append(segment)
            for seg in segments:
                parts.append(
                    f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
                    f'points="{" ".join(seg)}"/>'
                )
            parts.append(
                f'<text x="{spec.width - MARGIN_RIGHT - 4}" y="{MARGIN_TOP + 14 + 14 * si}" '
                f'text-anchor="end" font-family="monospace" font-size="11" '
                f'fill="{color}">{_escape(s.name)}</text>'
            )
    else:  # bar: first series only, bars drop to the bottom axis
        s = series[0]
        n = len(s.x)
        bar_w = plot_w / max(n, 1) * 0.7
        for x, y in zip(s.x, s.y):
            if y is None:
                continue
            cx = px(x)
            top = py(y)
            height = max(0.0, (MARGIN_TOP + plot_h) - top)
            parts.append(
                f'<rect x="{_fmt(cx - bar_w / 2)}" y="{_fmt(top)}" width="{_fmt(bar_w)}" '
                f'height="{_fmt(height)}" fill="{PALETTE[0]}"/>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_heatmap(
    z_labels: list[list[str]],
    x_values: list[float],
    y_values: list[float],
    title: str = "",
    width: int = 800,
    height: int = 480,
) -> str:
    """Categorical heat map (e.g. winning topology per parameter cell).

    z_labels[i][j] is the category at row i (y_values[i]) and column j
    (x_values[j]); colors are assigned by first appearance.
    """
    if not z_labels or not z_labels[0]:
        raise ConfigError("empty heat map")
    if len(z_labels) != len(y_values) or any(len(row) != len(x_values) for row in z_labels):
        raise ConfigError("heat map shape mismatch")
    spec = ChartSpec(kind="line", title=title, width=width, height=height)
    parts = _svg_header(spec)
    plot_w = width - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = height - MARGIN_TOP - MARGIN_BOTTOM
    cell_w = plot_w / len(x_values)
    cell_h = plot_h / len(y_values)
    colors: dict[str, str] = {}
    for i, row in enumerate(z_labels):
        for j, label in enumerate(row):
            if label not in colors:
                colors[label] = HEAT_PALETTE[len(colors) % len(HEAT_PALETTE)]
            x = MARGIN_LEFT + j * cell_w
            y = MARGIN_TOP + (len(y_values) - 1 - i) * cell_h
            parts.append(
                f'<rect x="{_fmt(x)}" y="{_fmt(y)}" width="{_fmt(cell_w)}" '
                f'height="{_fmt(cell_h)}" fill="{colors[label]}" stroke="#ffffff" stroke-width="0.5"/>'
            )
    for li, (label, color) in enumerate(sorted(colors.items())):
        parts.append(
            f'<rect x="{MARGIN_LEFT + 6 + 110 * li}" y="{height - 34}" width="12" height="12" fill="{color}"/>'
        )
        parts.append(
            f'<text x="{MARGIN_LEFT + 22 + 110 * li}" y="{height - 24}" '
            f'font-family="monospace" font-size="11">{_escape(label)}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
