"""Scree plot rendered as a standalone SVG document, no plotting library needed."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

from .reduction import ScreeData

WIDTH, HEIGHT = 800, 600
MARGIN_LEFT, MARGIN_RIGHT, MARGIN_TOP, MARGIN_BOTTOM = 80, 40, 50, 70


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _nice_step(span: float) -> float:
    raw = span / 5.0
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 2.5, 5.0, 10.0):
        if raw <= mult * mag:
            return mult * mag
    return 10.0 * mag


def render_scree_svg(scree: ScreeData, title: str = "Scree plot") -> bytes:
    """Eigenvalue-versus-component line with markers and a dashed Kaiser line at 1."""
    values = list(scree.eigenvalues)
    count = len(values)
    if count == 0:
        raise ValueError("scree data is empty")
    y_max = max(max(values), scree.kaiser_line) * 1.1
    y_min = min(0.0, min(values))
    left, right = MARGIN_LEFT, WIDTH - MARGIN_RIGHT
    top, bottom = MARGIN_TOP, HEIGHT - MARGIN_BOTTOM

    def px(i: int) -> float:
        if count == 1:
            return (left + right) / 2.0
        return left + (i - 1) * (right - left) / (count - 1)

    def py(v: float) -> float:
        return bottom - (v - y_min) * (bottom - top) / (y_max - y_min)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>',
        f'<text x="{WIDTH / 2:.0f}" y="28" text-anchor="middle" font-family="sans-serif" '
        f'font-size="18">{escape(title)}</text>',
        f'<line class="axis" x1="{left}" y1="{bottom}" x2="{right}" y2="{bottom}" stroke="#000000"/>',
        f'<line class="axis" x1="{left}" y1="{top}" x2="{left}" y2="{bottom}" stroke="#000000"/>',
    ]
    step = _nice_step(y_max - y_min)
    tick = math.ceil(y_min / step) * step
    while tick <= y_max + 1e-12:
        y = py(tick)
        out.append(f'<line class="tick" x1="{left - 5}" y1="{_fmt(y)}" x2="{left}" y2="{_fmt(y)}" stroke="#000000"/>')
        out.append(
            f'<text x="{left - 8}" y="{_fmt(y + 4)}" text-anchor="end" font-family="sans-serif" '
            f'font-size="12">{tick:g}</text>'
        )
        tick += step
    for i in scree.indices:
        x = px(i)
        out.append(
            f'<text x="{_fmt(x)}" y="{bottom + 20}" text-anchor="middle" font-family="sans-serif" '
            f'font-size="12">{i}</text>'
        )
    ky = py(scree.kaiser_line)
    out.append(
        f'<line class="kaiser" x1="{left}" y1="{_fmt(ky)}" x2="{right}" y2="{_fmt(ky)}" '
        'stroke="#d62728" stroke-dasharray="6,4"/>'
    )
    out.append(
        f'<text x="{right - 4}" y="{_fmt(ky - 6)}" text-anchor="end" font-family="sans-serif" '
        'font-size="12" fill="#d62728">Kaiser</text>'
    )
    points = " ".join(f"{_fmt(px(i))},{_fmt(py(v))}" for i, v in zip(scree.indices, values))
    out.append(f'<polyline class="eigenvalues" points="{points}" fill="none" stroke="#1f77b4" stroke-width="2"/>')
    for i, v in zip(scree.indices, values):
        out.append(f'<circle class="marker" cx="{_fmt(px(i))}" cy="{_fmt(py(v))}" r="5" fill="#1f77b4"/>')
    out.append(
        f'<text x="{(left + right) / 2:.0f}" y="{HEIGHT - 20}" text-anchor="middle" '
        'font-family="sans-serif" font-size="14">component</text>'
    )
    out.append(
        f'<text x="20" y="{(top + bottom) / 2:.0f}" text-anchor="middle" font-family="sans-serif" '
        f'font-size="14" transform="rotate(-90 20 {(top + bottom) / 2:.0f})">eigenvalue</text>'
    )
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")
