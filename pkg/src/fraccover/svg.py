"""Static SVG of the optimal-cover shape family, no plotting dependency.

Output is deterministic; the only run-to-run variation allowed is the
version comment on the second line.
"""

from __future__ import annotations

from typing import Sequence

from . import __version__
from .optimal_cover import shape_profile

PANEL = 160
PAD = 24
FILL = "#4a7ab5"


def _num(v: float) -> str:
    return f"{v:.3f}"


def shape_family_svg(
    d_h_values: Sequence[float],
    delta: float = 1.0,
    c2: float = 1.0,
    n_samples: int = 256,
) -> str:
    """One panel per d_h showing the filled region 0 <= y <= f(x), 0 <= x <= delta."""
    shapes = [shape_profile(delta, d, c2, n_samples) for d in d_h_values]
    y_top = max(float(s.f_x.max()) for s in shapes)
    width = len(shapes) * (PANEL + PAD) + PAD
    height = PANEL + 3 * PAD
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f"<!-- fraccover {__version__} -->",
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    for k, s in enumerate(shapes):
        x0 = PAD + k * (PANEL + PAD)
        y0 = PAD + PANEL
        sx = PANEL / delta
        sy = PANEL / y_top
        pts = [(x0, y0)]
        pts += [(x0 + x * sx, y0 - y * sy) for x, y in s.profile]
        pts.append((x0 + delta * sx, y0))
        poly = " ".join(f"{_num(a)},{_num(b)}" for a, b in pts)
        lines.append(f'<g id="dh-{s.d_h:.4f}">')
        lines.append(
            f'<rect x="{x0}" y="{PAD}" width="{PANEL}" height="{PANEL}" '
            'fill="none" stroke="#bbbbbb"/>'
        )
        lines.append(f'<polygon points="{poly}" fill="{FILL}" fill-opacity="0.6" stroke="black"/>')
        lines.append(
            f'<text x="{x0 + PANEL / 2:.1f}" y="{y0 + PAD * 1.2:.1f}" font-family="sans-serif" '
            f'font-size="13" text-anchor="middle">D_H = {s.d_h:.3f}</text>'
        )
        lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
