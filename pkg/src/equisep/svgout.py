"""SVG rendering of arc cycles and input sets.

Arcs are emitted as native elliptical-arc path segments, never as
polyline approximations; a full circle needs two semicircular segments
because a single SVG arc command cannot close on itself. The y axis is
flipped on output so the picture matches mathematical orientation.
"""

from __future__ import annotations

import math
import re

from .curvedoc import format_number as _f
from .geometry import ArcCycle, HOLE, PointSet

_STYLE_BASE = (
    ".curve{fill:none;stroke:#0057b7;stroke-width:%s}"
    ".hole{fill:none;stroke:#b7005e;stroke-width:%s;stroke-dasharray:%s %s}"
)

_SET_COLORS = ["#111111", "#e63946", "#2a9d8f", "#7b2cbf", "#e9940a", "#4361ee"]


def _css_class(name: str) -> str:
    cleaned = re.sub(r"[^A-Za-z0-9_-]", "_", name)
    return f"set-{cleaned or 'unnamed'}"


def _endpoint(arc, theta):
    return (
        arc.center.x + arc.radius * math.cos(theta),
        arc.center.y + arc.radius * math.sin(theta),
    )


def _arc_segment(arc, sweep: float, theta1: float, ccw: bool) -> str:
    x1, y1 = _endpoint(arc, theta1)
    large = 1 if sweep > math.pi else 0
    # math-ccw becomes the negative-angle direction once y is flipped
    flag = 0 if ccw else 1
    r = _f(arc.radius)
    return f"A {r} {r} 0 {large} {flag} {_f(x1)} {_f(-y1)}"


def _cycle_path(cycle: ArcCycle) -> str:
    parts = []
    first = True
    for arc, rev in zip(cycle.arcs, cycle.reversed_flags):
        if arc.full_circle:
            sx, sy = _endpoint(arc, arc.start_angle)
            if first:
                parts.append(f"M {_f(sx)} {_f(-sy)}")
                first = False
            half = arc.start_angle + math.pi
            parts.append(_arc_segment(arc, math.pi, half, ccw=True))
            parts.append(_arc_segment(arc, math.pi, arc.start_angle, ccw=True))
            continue
        start, end = arc.start_angle, arc.end_angle
        if rev:
            start, end = end, start
        sx, sy = _endpoint(arc, start)
        if first:
            parts.append(f"M {_f(sx)} {_f(-sy)}")
            first = False
        parts.append(_arc_segment(arc, arc.sweep, end, ccw=not rev))
    parts.append("Z")
    return " ".join(parts)


def emit_svg(curves, sets: dict[str, PointSet] | None = None) -> str:
    """Render cycles and labelled point sets as an SVG 1.1 document.

    Cycles get class "curve" or "hole" by kind; each set's dots get
    class "set-<name>". The viewport is the joint bounding box plus a
    10% margin.
    """
    sets = sets or {}
    xs: list[float] = []
    ys: list[float] = []
    for cycle in curves:
        for arc in cycle.arcs:
            xs.extend([arc.center.x - arc.radius, arc.center.x + arc.radius])
            ys.extend([arc.center.y - arc.radius, arc.center.y + arc.radius])
    for ps in sets.values():
        for p in ps.points:
            xs.append(p.x)
            ys.append(p.y)
    if not xs:
        xs = [0.0, 1.0]
        ys = [0.0, 1.0]
    min_x, max_x = min(xs), max(xs)
    min_y, max_y = min(ys), max(ys)
    span = max(max_x - min_x, max_y - min_y, 1e-9)
    margin = 0.1 * span
    vb_x = min_x - margin
    vb_y = -(max_y + margin)
    vb_w = (max_x - min_x) + 2 * margin
    vb_h = (max_y - min_y) + 2 * margin
    stroke = span / 300.0
    dot = span / 150.0

    style = [_STYLE_BASE % (_f(stroke), _f(stroke), _f(3 * stroke), _f(2 * stroke))]
    for idx, name in enumerate(sets):
        color = _SET_COLORS[idx % len(_SET_COLORS)]
        style.append(".%s{fill:%s;stroke:none}" % (_css_class(name), color))

    lines = [
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{_f(vb_x)} {_f(vb_y)} {_f(vb_w)} {_f(vb_h)}">',
        "<style>" + "".join(style) + "</style>",
    ]
    for cycle in curves:
        cls = "hole" if cycle.kind == HOLE else "curve"
        lines.append(f'<path class="{cls}" d="{_cycle_path(cycle)}"/>')
    for name, ps in sets.items():
        cls = _css_class(name)
        for p in ps.points:
            lines.append(
                f'<circle class="{cls}" cx="{_f(p.x)}" cy="{_f(-p.y)}" r="{_f(dot)}"/>'
            )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
