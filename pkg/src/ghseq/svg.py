"""Minimal, byte-deterministic SVG line plots."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence
from xml.sax.saxutils import escape

from ghseq.correlation import CorrelationSeries
from ghseq.errors import GhseqError

WIDTH, HEIGHT = 640, 400
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 60, 20, 40, 50
COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd")


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def render_lines(
    lines: Sequence[tuple[str, Sequence[tuple[float, float]]]],
    title: str,
    y_range: tuple[float, float],
    x_label: str = "",
    y_label: str = "",
) -> str:
    """One ``<polyline>`` per named series, on shared linear axes."""
    if not lines or any(not pts for _, pts in lines):
        raise GhseqError("nothing to plot")
    xs = [x for _, pts in lines for x, _ in pts]
    x0, x1 = min(xs), max(xs)
    if x1 == x0:
        x1 = x0 + 1
    y0, y1 = y_range
    pw = WIDTH - MARGIN_L - MARGIN_R
    ph = HEIGHT - MARGIN_T - MARGIN_B

    def sx(x):
        return MARGIN_L + (x - x0) / (x1 - x0) * pw

    def sy(y):
        return MARGIN_T + (y1 - y) / (y1 - y0) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.0f}" y="24" text-anchor="middle" font-size="16">{escape(title)}</text>',
        f'<line x1="{MARGIN_L}" y1="{_fmt(sy(y0))}" x2="{MARGIN_L + pw}" y2="{_fmt(sy(y0))}" stroke="black"/>',
        f'<line x1="{MARGIN_L}" y1="{MARGIN_T}" x2="{MARGIN_L}" y2="{MARGIN_T + ph}" stroke="black"/>',
    ]
    if y0 < 0 < y1:
        out.append(
            f'<line x1="{MARGIN_L}" y1="{_fmt(sy(0))}" x2="{MARGIN_L + pw}" y2="{_fmt(sy(0))}" '
            'stroke="#999" stroke-dasharray="4 3"/>'
        )
    for i in range(5):
        yv = y0 + (y1 - y0) * i / 4
        out.append(
            f'<text x="{MARGIN_L - 6}" y="{_fmt(sy(yv) + 4)}" text-anchor="end" font-size="11">{yv:.2f}</text>'
        )
        xv = x0 + (x1 - x0) * i / 4
        out.append(
            f'<text x="{_fmt(sx(xv))}" y="{MARGIN_T + ph + 16}" text-anchor="middle" font-size="11">{xv:g}</text>'
        )
    if x_label:
        out.append(
            f'<text x="{MARGIN_L + pw / 2:.0f}" y="{HEIGHT - 10}" text-anchor="middle" font-size="12">'
            f"{escape(x_label)}</text>"
        )
    if y_label:
        out.append(
            f'<text x="14" y="{MARGIN_T + ph / 2:.0f}" text-anchor="middle" font-size="12" '
            f'transform="rotate(-90 14 {MARGIN_T + ph / 2:.0f})">{escape(y_label)}</text>'
        )
    for i, (name, pts) in enumerate(lines):
        color = COLORS[i % len(COLORS)]
        coords = " ".join(f"{_fmt(sx(x))},{_fmt(sy(y))}" for x, y in pts)
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{coords}"/>')
        if len(lines) > 1:
            ly = MARGIN_T + 14 + 16 * i
            out.append(
                f'<text x="{MARGIN_L + pw - 4}" y="{ly}" text-anchor="end" font-size="11" '
                f'fill="{color}">{escape(name)}</text>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_svg_plot(data, title: str, path: str | Path) -> Path:
    """Write a CCF series or a list of table rows as an SVG line plot."""
    if isinstance(data, CorrelationSeries):
        lines = [("ccf", list(enumerate(data.values)))]
        text = render_lines(lines, title, (-1.0, 1.0), "lag k", "CCF(k)")
    else:
        rows = list(data)
        if not rows:
            raise GhseqError("nothing to plot")
        lines = [
            ("GH", [(r.length, r.gh_peak) for r in rows]),
            ("PN same generator", [(r.length, r.pn_same_peak) for r in rows]),
            ("PN different generators", [(r.length, r.pn_diff_peak) for r in rows]),
        ]
        text = render_lines(lines, title, (0.0, 1.0), "length of bits", "peak CCF")
    path = Path(path)
    path.write_text(text, encoding="utf-8", newline="\n")
    return path
