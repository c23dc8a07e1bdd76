"""SVG rendering of a :class:`PolygonLayout`."""
from __future__ import annotations

from typing import Tuple

import drawsvg as draw

from .types.results import PolygonLayout, Rect, SideRef

CANVAS = 480.0
PADDING = 40.0

PALETTE = (
    "#d62728",
    "#1f77b4",
    "#2ca02c",
    "#9467bd",
    "#ff7f0e",
    "#8c564b",
    "#e377c2",
    "#17becf",
    "#bcbd22",
    "#7f7f7f",
)


class _Frame:
    """Maps layout coordinates (y up) onto the canvas (y down)."""

    def __init__(self, layout: PolygonLayout) -> None:
        xs = [r.x for r in layout.rects] + [r.x1 for r in layout.rects]
        ys = [r.y for r in layout.rects] + [r.y1 for r in layout.rects]
        for point in layout.reflection_line:
            xs.append(point[0])
            ys.append(point[1])
        self.x0 = min(xs)
        self.y1 = max(ys)
        extent = max(max(xs) - self.x0, self.y1 - min(ys)) or 1.0
        self.scale = CANVAS / extent
        self.width = (max(xs) - self.x0) * self.scale + 2 * PADDING
        self.height = (self.y1 - min(ys)) * self.scale + 2 * PADDING

    def point(self, x: float, y: float) -> Tuple[float, float]:
        return (
            round(PADDING + (x - self.x0) * self.scale, 4),
            round(PADDING + (self.y1 - y) * self.scale, 4),
        )


def _side(rect: Rect, side: str) -> Tuple[Tuple[float, float], Tuple[float, float]]:
    if side == "left":
        return (rect.x, rect.y), (rect.x, rect.y1)
    if side == "right":
        return (rect.x1, rect.y), (rect.x1, rect.y1)
    if side == "bottom":
        return (rect.x, rect.y), (rect.x1, rect.y)
    return (rect.x, rect.y1), (rect.x1, rect.y1)


def build_drawing(layout: PolygonLayout) -> draw.Drawing:
    frame = _Frame(layout)
    d = draw.Drawing(round(frame.width, 4), round(frame.height, 4))

    for rect in layout.rects:
        left, top = frame.point(rect.x, rect.y1)
        fill = "#f2f2f2" if rect.label.startswith("P") else "#e6eef7"
        d.append(
            draw.Rectangle(
                left,
                top,
                round(rect.width * frame.scale, 4),
                round(rect.height * frame.scale, 4),
                fill=fill,
                stroke="#333333",
                stroke_width=1,
                class_="rect",
            )
        )
        cx, cy = frame.point(*rect.center)
        d.append(
            draw.Text(
                rect.label,
                12,
                cx,
                cy - 8,
                text_anchor="middle",
                font_family="sans-serif",
                fill="#333333",
            )
        )

    for index, pair in enumerate(layout.identifications):
        colour = PALETTE[index % len(PALETTE)]
        for ref in (pair.first, pair.second):
            d.append(_side_line(frame, layout, ref, colour))

    (ax, ay), (bx, by) = layout.reflection_line
    start = frame.point(ax, ay)
    end = frame.point(bx, by)
    d.append(
        draw.Line(
            *start,
            *end,
            stroke="#555555",
            stroke_width=1,
            stroke_dasharray="6,4",
            class_="reflection-line",
        )
    )

    for name, (x, y) in layout.marked_points.items():
        px, py = frame.point(x, y)
        d.append(draw.Circle(px, py, 3, fill="#000000", class_="marked-point"))
        d.append(draw.Text(name, 10, px + 4, py + 12, font_family="sans-serif", fill="#000000"))

    d.append(
        draw.Text(
            layout.scale_note,
            10,
            PADDING,
            round(frame.height - PADDING / 3, 4),
            font_family="sans-serif",
            fill="#555555",
        )
    )
    return d


def _side_line(frame: _Frame, layout: PolygonLayout, ref: SideRef, colour: str) -> draw.Line:
    (ax, ay), (bx, by) = _side(layout.rect(ref.label), ref.side)
    return draw.Line(
        *frame.point(ax, ay),
        *frame.point(bx, by),
        stroke=colour,
        stroke_width=3,
        class_="identification",
    )


def layout_svg(layout: PolygonLayout) -> str:
    """SVG 1.1 text of ``layout``; identical input gives identical bytes."""

    return build_drawing(layout).as_svg()
