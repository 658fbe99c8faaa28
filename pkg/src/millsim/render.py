"""Standalone SVG frames from a trace.

Everything is drawn in world coordinates inside one group whose transform maps
the arena bounding box (plus a margin) onto the viewport, so frames of one
trace share a mapping and agent circles keep world-unit ``cx``/``cy``.
"""

from __future__ import annotations

import math
from pathlib import Path

from .engine import TickRecord, Trace

VIEW_PX = 800
MARGIN = 0.05
SENSED = "#d62728"
CLEAR = "#1f77b4"


def _n(x: float) -> str:
    return format(x, ".9g")


def _viewport(trace: Trace) -> tuple[float, float, float, int, int]:
    x0, y0, x1, y1 = trace.config.arena.bounds()
    pad = MARGIN * max(x1 - x0, y1 - y0)
    x0, y0, x1, y1 = x0 - pad, y0 - pad, x1 + pad, y1 + pad
    scale = VIEW_PX / max(x1 - x0, y1 - y0)
    width = round((x1 - x0) * scale)
    height = round((y1 - y0) * scale)
    # y axis points up in the world and down in SVG.
    return scale, -x0 * scale, y1 * scale, width, height


def frame_svg(trace: Trace, record: TickRecord) -> str:
    config = trace.config
    scale, tx, ty, width, height = _viewport(trace)
    r = config.agent_radius
    reach = config.sensor.view_distance
    lo, hi = config.sensor.fov_right_bound, config.sensor.fov_left_bound
    stroke = 1.0 / scale

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<g transform="matrix({_n(scale)} 0 0 {_n(-scale)} {_n(tx)} {_n(ty)})">',
    ]
    pts = " ".join(f"{_n(p.x)},{_n(p.y)}" for p in config.arena.vertices)
    out.append(f'<polygon class="arena" points="{pts}" fill="none" stroke="black" '
               f'stroke-width="{_n(2 * stroke)}"/>')
    for a in record.agents:
        color = SENSED if a.sense else CLEAR
        e1 = (a.x + reach * math.cos(a.heading + lo), a.y + reach * math.sin(a.heading + lo))
        e2 = (a.x + reach * math.cos(a.heading + hi), a.y + reach * math.sin(a.heading + hi))
        out.append(
            f'<path class="cone" d="M {_n(a.x)} {_n(a.y)} L {_n(e1[0])} {_n(e1[1])} '
            f'A {_n(reach)} {_n(reach)} 0 0 1 {_n(e2[0])} {_n(e2[1])} Z" '
            f'fill="{color}" fill-opacity="0.15" stroke="none"/>'
        )
    for a in record.agents:
        color = SENSED if a.sense else CLEAR
        hx, hy = a.x + 1.6 * r * math.cos(a.heading), a.y + 1.6 * r * math.sin(a.heading)
        out.append(f'<circle class="agent" data-id="{a.id}" cx="{_n(a.x)}" cy="{_n(a.y)}" '
                   f'r="{_n(r)}" fill="{color}" stroke="black" stroke-width="{_n(stroke)}"/>')
        out.append(f'<line class="heading" x1="{_n(a.x)}" y1="{_n(a.y)}" x2="{_n(hx)}" '
                   f'y2="{_n(hy)}" stroke="black" stroke-width="{_n(2 * stroke)}"/>')
    c = record.metrics.center_of_mass
    k = 0.75 * r
    out.append(
        f'<path class="com" d="M {_n(c.x - k)} {_n(c.y)} L {_n(c.x + k)} {_n(c.y)} '
        f'M {_n(c.x)} {_n(c.y - k)} L {_n(c.x)} {_n(c.y + k)}" stroke="black" '
        f'stroke-width="{_n(2 * stroke)}"/>'
    )
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_frames(trace: Trace, every: int, out_dir: str | Path) -> list[Path]:
    """Write ``frame_<tick>.svg`` for ticks 0, every, 2*every, ... and return the paths."""
    if every < 1:
        raise ValueError("every must be at least 1")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for rec in trace.records[::every]:
        path = out / f"frame_{rec.tick:06d}.svg"
        path.write_text(frame_svg(trace, rec), encoding="utf-8")
        written.append(path)
    return written
