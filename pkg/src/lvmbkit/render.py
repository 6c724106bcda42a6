"""Deterministic SVG pictures of planar configurations, fans and polygons.

Exact coordinates are turned into floats only here, for drawing.
"""
from __future__ import annotations

import math

from .configuration import VectorConfiguration
from .errors import DimensionError
from .field import to_float

__all__ = ["render_svg", "CANVAS", "PALETTE"]

CANVAS = 800
_C = CANVAS / 2
_R = 320.0
PALETTE = {
    "background": "#ffffff",
    "axis": "#d0d0d0",
    "ray": "#1f3b73",
    "ghost": "#8a8a8a",
    "wedge": ["#f4a261", "#2a9d8f", "#e9c46a", "#8ab17d", "#e76f51", "#a8dadc"],
    "edge": "#264653",
    "normal": "#b5179e",
    "vertex": "#264653",
}


def _f(x: float) -> str:
    s = f"{x:.2f}"
    return "0.00" if s == "-0.00" else s


def _to_canvas(x: float, y: float, scale: float):
    return _C + x * scale, _C - y * scale


def _arrow(x1, y1, x2, y2, color, dashed=False, label=None) -> list:
    dash = ' stroke-dasharray="8 6"' if dashed else ""
    out = [
        f'<line x1="{_f(x1)}" y1="{_f(y1)}" x2="{_f(x2)}" y2="{_f(y2)}" stroke="{color}" '
        f'stroke-width="3"{dash} marker-end="url(#head-{"ghost" if dashed else "ray"})"/>'
    ]
    if label is not None:
        dx, dy = x2 - x1, y2 - y1
        norm = math.hypot(dx, dy) or 1.0
        lx, ly = x2 + 18 * dx / norm, y2 + 18 * dy / norm
        out.append(
            f'<text x="{_f(lx)}" y="{_f(ly)}" font-family="sans-serif" font-size="18" '
            f'text-anchor="middle" dominant-baseline="middle" fill="{color}">{label}</text>'
        )
    return out


def _header() -> list:
    return [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{CANVAS}" height="{CANVAS}" '
        f'viewBox="0 0 {CANVAS} {CANVAS}">',
        "<defs>",
        f'<marker id="head-ray" markerWidth="10" markerHeight="8" refX="9" refY="4" orient="auto">'
        f'<polygon points="0 0, 10 4, 0 8" fill="{PALETTE["ray"]}"/></marker>',
        f'<marker id="head-ghost" markerWidth="10" markerHeight="8" refX="9" refY="4" orient="auto">'
        f'<polygon points="0 0, 10 4, 0 8" fill="{PALETTE["ghost"]}"/></marker>',
        f'<marker id="head-normal" markerWidth="8" markerHeight="6" refX="7" refY="3" orient="auto">'
        f'<polygon points="0 0, 8 3, 0 6" fill="{PALETTE["normal"]}"/></marker>',
        "</defs>",
        f'<rect width="{CANVAS}" height="{CANVAS}" fill="{PALETTE["background"]}"/>',
        f'<line x1="0" y1="{_f(_C)}" x2="{CANVAS}" y2="{_f(_C)}" stroke="{PALETTE["axis"]}" stroke-width="1"/>',
        f'<line x1="{_f(_C)}" y1="0" x2="{_f(_C)}" y2="{CANVAS}" stroke="{PALETTE["axis"]}" stroke-width="1"/>',
    ]


def _fan_body(V: VectorConfiguration, T) -> list:
    vecs = [(to_float(v[0]), to_float(v[1])) for v in V.vectors]
    longest = max((math.hypot(x, y) for x, y in vecs), default=0.0) or 1.0
    scale = _R / longest
    body = []
    if T is not None:
        for k, s in enumerate(T.sorted_simplices()):
            a, b = s
            ua, ub = vecs[a], vecs[b]
            ra = math.hypot(*ua) or 1.0
            rb = math.hypot(*ub) or 1.0
            pa = _to_canvas(ua[0] / ra * _R * 0.9, ua[1] / ra * _R * 0.9, 1.0)
            pb = _to_canvas(ub[0] / rb * _R * 0.9, ub[1] / rb * _R * 0.9, 1.0)
            cross = ua[0] * ub[1] - ua[1] * ub[0]
            # screen y points down, so a counter-clockwise turn sweeps with flag 0
            sweep = 0 if cross > 0 else 1
            color = PALETTE["wedge"][k % len(PALETTE["wedge"])]
            body.append(
                f'<path d="M {_f(_C)} {_f(_C)} L {_f(pa[0])} {_f(pa[1])} '
                f'A {_f(_R * 0.9)} {_f(_R * 0.9)} 0 0 {sweep} {_f(pb[0])} {_f(pb[1])} Z" '
                f'fill="{color}" fill-opacity="0.35" stroke="none"/>'
            )
    support = T.support if T is not None else frozenset(range(V.h))
    for i, (x, y) in enumerate(vecs):
        ghost = i >= V.h or (T is not None and i not in support)
        if x == 0 and y == 0:
            body.append(
                f'<circle cx="{_f(_C)}" cy="{_f(_C)}" r="6" fill="none" stroke="{PALETTE["ghost"]}" '
                f'stroke-dasharray="3 3"/>'
            )
            continue
        ex, ey = _to_canvas(x, y, scale)
        body.extend(_arrow(_C, _C, ex, ey, PALETTE["ghost"] if ghost else PALETTE["ray"], ghost, f"v{i + 1}"))
    return body


def _polytope_body(P) -> list:
    from .delzant import vertices

    verts = [(to_float(mu[0]), to_float(mu[1])) for mu in vertices(P)]
    cx = sum(x for x, _ in verts) / len(verts)
    cy = sum(y for _, y in verts) / len(verts)
    verts.sort(key=lambda p: math.atan2(p[1] - cy, p[0] - cx))
    extent = max(max(abs(x - cx), abs(y - cy)) for x, y in verts) or 1.0
    scale = _R * 0.8 / extent

    def place(x, y):
        return _C + (x - cx) * scale, _C - (y - cy) * scale

    pts = " ".join(f"{_f(a)},{_f(b)}" for a, b in (place(x, y) for x, y in verts))
    body = [
        f'<polygon points="{pts}" fill="{PALETTE["wedge"][1]}" fill-opacity="0.25" '
        f'stroke="{PALETTE["edge"]}" stroke-width="3"/>'
    ]
    for x, y in verts:
        px, py = place(x, y)
        body.append(f'<circle cx="{_f(px)}" cy="{_f(py)}" r="5" fill="{PALETTE["vertex"]}"/>')
    for j in range(P.h):
        v = P.vectors[j]
        vx, vy = to_float(v[0]), to_float(v[1])
        norm = math.hypot(vx, vy)
        if norm == 0:
            continue
        level = to_float(P.levels[j])
        on_face = [(x, y) for x, y in verts if abs(x * vx + y * vy - level) <= 1e-9 * max(1.0, abs(level))]
        if len(on_face) < 2:
            continue
        mx = sum(x for x, _ in on_face) / len(on_face)
        my = sum(y for _, y in on_face) / len(on_face)
        sx, sy = place(mx, my)
        ex, ey = sx + 40 * vx / norm, sy - 40 * vy / norm
        body.append(
            f'<line x1="{_f(sx)}" y1="{_f(sy)}" x2="{_f(ex)}" y2="{_f(ey)}" stroke="{PALETTE["normal"]}" '
            f'stroke-width="2" marker-end="url(#head-normal)"/>'
        )
    return body


def render_svg(V: VectorConfiguration | None = None, T=None, P=None) -> str:
    """SVG 1.1 document for a planar configuration, fan or polygon presentation."""
    if P is not None:
        if P.d != 2:
            raise DimensionError("render requires d = 2")
        body = _polytope_body(P)
    else:
        if V is None:
            raise ValueError("nothing to render")
        if V.d != 2:
            raise DimensionError("render requires d = 2")
        body = _fan_body(V, T)
    return "\n".join(_header() + body + ["</svg>"]) + "\n"
