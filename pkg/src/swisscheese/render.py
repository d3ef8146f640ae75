"""SVG drawings of cheeses and classicalisation traces."""

from __future__ import annotations

from collections.abc import Sequence

from .cheese import DiscAssignment
from .geometry import ClosedDisc

MARGIN = 0.05
CHEESE_FILL = "#f4d35e"
RIM = "#9c7a00"
HOLE_FILL = "#ffffff"
HOLE_STROKE = "#555555"


def _num(v: float) -> str:
    return format(v, ".12g")


def _circle(cx: float, cy: float, r: float, fill: str, stroke: str, width: float) -> str:
    # svg y axis points down
    return (
        f'<circle cx="{_num(cx)}" cy="{_num(-cy)}" r="{_num(r)}" '
        f'fill="{fill}" stroke="{stroke}" stroke-width="{_num(width)}"/>'
    )


def render_svg(frames: Sequence[DiscAssignment], frame_box: ClosedDisc, width: int = 512) -> str:
    """One ``<g>`` per frame, laid out left to right.

    Each frame is a square fitted to ``frame_box`` with a 5% margin.
    """
    half = frame_box.radius * (1 + MARGIN)
    side = 2 * half
    x0 = frame_box.center.x - half
    y0 = -frame_box.center.y - half
    line = frame_box.radius / 250
    count = len(frames)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width * count}" height="{width}" '
        f'viewBox="{_num(x0)} {_num(y0)} {_num(side * count)} {_num(side)}">',
    ]
    for k, d in enumerate(frames):
        lines.append(f'<g id="frame-{k}" transform="translate({_num(k * side)},0)">')
        o = d.outer
        lines.append(_circle(o.center.x, o.center.y, o.radius, CHEESE_FILL, RIM, line))
        for i in d.disc_indices():
            g = d[i]
            lines.append(_circle(g.center.x, g.center.y, g.radius, HOLE_FILL, HOLE_STROKE, line))
        lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
