"""Deterministic SVG rendering of chamber boundaries.

Output is a pure function of the region list: elements are sorted by a
canonical key (half-planes, then radius descending, then center, then
source vector), every coordinate is printed with nine fixed decimals,
and negative zero is normalized, so repeated renders are byte-identical
regardless of enumeration thread count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .chambers import ChamberBoundary
from .projection import DiscRegion

VIEW_HALF = 1.05
STROKE_WIDTH = 0.006
HALFPLANE_REACH = 4.0

DEFAULT_PALETTE: dict[str, str] = {
    "page": "#ffffff",
    "background": "#101010",
    "disc": "#ffffff",
    "highlight": "#c62828",
}


@dataclass(frozen=True)
class RenderSpec:
    """One drawable layer: a chamber boundary plus palette and style.

    style 'fill' paints the maximal regions; style 'stroke' outlines
    their boundary circles in the highlight color.
    """

    boundary: ChamberBoundary
    palette: Mapping[str, str] = field(default_factory=dict)
    style: str = "fill"
    canvas_px: int = 900

    def color(self, key: str) -> str:
        merged = {**DEFAULT_PALETTE, **dict(self.palette)}
        if key not in merged:
            raise KeyError(f"palette has no color for {key!r}")
        return str(merged[key])


def _fmt(x: float) -> str:
    s = f"{float(x):.9f}"
    return "0.000000000" if s == "-0.000000000" else s


def _sort_key(region: DiscRegion):
    src = region.source.coords if region.source is not None else ()
    if region.kind == "halfplane":
        return (0, region.offset, region.normal[0], region.normal[1], src)
    return (1, -region.radius, region.center[0], region.center[1], src)


def _circle_path(cx: float, cy: float, r: float) -> str:
    left = _fmt(cx - r)
    right = _fmt(cx + r)
    ry = _fmt(cy)
    rr = _fmt(r)
    return (f"M {right} {ry} A {rr} {rr} 0 1 0 {left} {ry} "
            f"A {rr} {rr} 0 1 0 {right} {ry} Z")


def _halfplane_corners(region: DiscRegion) -> list[tuple[float, float]]:
    n1, n2 = region.normal
    b = region.offset
    px, py = b * n1, b * n2
    tx, ty = -n2, n1
    reach = HALFPLANE_REACH + abs(b)
    return [
        (px + reach * tx, py + reach * ty),
        (px + reach * (tx + n1), py + reach * (ty + n2)),
        (px + reach * (n1 - tx), py + reach * (n2 - ty)),
        (px - reach * tx, py - reach * ty),
    ]


def _fill_element(region: DiscRegion, color: str) -> str:
    if region.kind == "disc":
        cx, cy = region.center
        return (f'<circle cx="{_fmt(cx)}" cy="{_fmt(-cy)}" '
                f'r="{_fmt(region.radius)}" fill="{color}"/>')
    if region.kind == "hole":
        cx, cy = region.center
        v = _fmt(VIEW_HALF)
        nv = _fmt(-VIEW_HALF)
        frame_path = f"M {nv} {nv} L {v} {nv} L {v} {v} L {nv} {v} Z"
        return (f'<path d="{frame_path} {_circle_path(cx, -cy, region.radius)}" '
                f'fill="{color}" fill-rule="evenodd"/>')
    pts = " ".join(f"{_fmt(zx)},{_fmt(-zy)}" for zx, zy in _halfplane_corners(region))
    return f'<polygon points="{pts}" fill="{color}"/>'


def _stroke_element(region: DiscRegion, color: str) -> str:
    if region.kind == "halfplane":
        n1, n2 = region.normal
        b = region.offset
        px, py = b * n1, b * n2
        tx, ty = -n2, n1
        reach = HALFPLANE_REACH
        return (f'<line x1="{_fmt(px + reach * tx)}" y1="{_fmt(-(py + reach * ty))}" '
                f'x2="{_fmt(px - reach * tx)}" y2="{_fmt(-(py - reach * ty))}" '
                f'stroke="{color}" stroke-width="{_fmt(STROKE_WIDTH)}" fill="none"/>')
    cx, cy = region.center
    return (f'<circle cx="{_fmt(cx)}" cy="{_fmt(-cy)}" r="{_fmt(region.radius)}" '
            f'stroke="{color}" stroke-width="{_fmt(STROKE_WIDTH)}" fill="none"/>')


def render_overlay(specs: Sequence[RenderSpec]) -> bytes:
    """Compose layers into one SVG document (first layer sets the canvas)."""
    if not specs:
        raise ValueError("need at least one layer")
    base = specs[0]
    v = _fmt(VIEW_HALF)
    nv = _fmt(-VIEW_HALF)
    size = _fmt(2 * VIEW_HALF)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        (f'<svg xmlns="http://www.w3.org/2000/svg" width="{base.canvas_px}" '
         f'height="{base.canvas_px}" viewBox="{nv} {nv} {size} {size}">'),
        f'<rect x="{nv}" y="{nv}" width="{size}" height="{size}" '
        f'fill="{base.color("page")}"/>',
        '<clipPath id="unitclip"><circle cx="0" cy="0" r="1"/></clipPath>',
        '<g clip-path="url(#unitclip)">',
        f'<circle cx="0" cy="0" r="1" fill="{base.color("background")}"/>',
    ]
    for spec in specs:
        if spec.style not in ("fill", "stroke"):
            raise ValueError(f"unknown style {spec.style!r}")
        regions = sorted(spec.boundary.maximal, key=_sort_key)
        if spec.style == "fill":
            color = spec.color("disc")
            lines.extend(_fill_element(r, color) for r in regions)
        else:
            color = spec.color("highlight")
            lines.extend(_stroke_element(r, color) for r in regions)
    lines.append("</g>")
    lines.append(f'<circle cx="0" cy="0" r="1" fill="none" '
                 f'stroke="{base.color("background")}" '
                 f'stroke-width="{_fmt(STROKE_WIDTH / 2)}"/>')
    lines.append("</svg>")
    return ("\n".join(lines) + "\n").encode("utf-8")


def render_svg(spec: RenderSpec) -> bytes:
    """Render a single chamber boundary to SVG bytes."""
    return render_overlay([spec])
