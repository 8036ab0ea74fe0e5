"""Deterministic SVG scatter plots of persistence diagrams."""
from __future__ import annotations

import math

from .persistence import PersistenceDiagram

_SIZE = 420
_MARGIN = 40
_COLORS = {
    "ordinary0-up": "#1f77b4",
    "ordinary0-down": "#d62728",
    "essential0": "#2ca02c",
    "extended1": "#9467bd",
}


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def export_plot(diagram: PersistenceDiagram) -> str:
    """Scatter plot with the diagonal drawn; infinite deaths sit on the
    top margin with an infinity annotation."""
    finite_vals = [v for p in diagram.points for v in (p.birth, p.death)
                   if math.isfinite(v)]
    lo = min(finite_vals, default=0.0)
    hi = max(finite_vals, default=1.0)
    if lo == hi:
        lo, hi = lo - 0.5, hi + 0.5
    pad = (hi - lo) * 0.05
    lo, hi = lo - pad, hi + pad
    span = hi - lo
    inner = _SIZE - 2 * _MARGIN

    def sx(v: float) -> float:
        return _MARGIN + (v - lo) / span * inner

    def sy(v: float) -> float:
        return _SIZE - _MARGIN - (v - lo) / span * inner

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SIZE}" height="{_SIZE}" '
        f'viewBox="0 0 {_SIZE} {_SIZE}">',
        f'<rect width="{_SIZE}" height="{_SIZE}" fill="white"/>',
        f'<line x1="{_MARGIN}" y1="{_SIZE - _MARGIN}" x2="{_SIZE - _MARGIN}" '
        f'y2="{_SIZE - _MARGIN}" stroke="black"/>',
        f'<line x1="{_MARGIN}" y1="{_MARGIN}" x2="{_MARGIN}" '
        f'y2="{_SIZE - _MARGIN}" stroke="black"/>',
        f'<line x1="{_MARGIN}" y1="{_SIZE - _MARGIN}" x2="{_SIZE - _MARGIN}" '
        f'y2="{_MARGIN}" stroke="#999999" stroke-dasharray="4 3"/>',
        f'<text x="{_SIZE // 2}" y="{_SIZE - 8}" font-size="12" '
        f'text-anchor="middle">birth</text>',
        f'<text x="12" y="{_SIZE // 2}" font-size="12" text-anchor="middle" '
        f'transform="rotate(-90 12 {_SIZE // 2})">death</text>',
    ]
    for p in sorted(diagram.points, key=lambda p: (p.cls, p.birth, p.death)):
        color = _COLORS.get(p.cls, "#555555")
        x = sx(p.birth)
        if math.isinf(p.death):
            y = _MARGIN / 2
            parts.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="4" '
                         f'fill="{color}"><title>{p.cls}</title></circle>')
            parts.append(f'<text x="{_fmt(x + 6)}" y="{_fmt(y + 4)}" '
                         f'font-size="11">&#8734;</text>')
        else:
            y = sy(p.death)
            parts.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="4" '
                         f'fill="{color}"><title>{p.cls}</title></circle>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
