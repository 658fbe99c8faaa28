"""Binary cone proximity sensor.

The sensing region is a circular sector anchored at the observer: bearings in
``[fov_right_bound, fov_left_bound]`` (positive = left of heading) out to
``view_distance``. Other agents are discs of radius ``agent_radius``. The
reading is true iff any disc intersects the sector. Occlusion is ignored.
"""

from __future__ import annotations

import math
from typing import Iterable, NamedTuple

from .core import AgentState, DomainError, SensorParams, wrap_angle


class SensorReading(NamedTuple):
    value: bool

    def __bool__(self) -> bool:
        return self.value


def _segment_distance(px: float, py: float, ex: float, ey: float) -> float:
    """Distance from (px, py) to the segment from the origin to (ex, ey)."""
    t = (px * ex + py * ey) / (ex * ex + ey * ey)
    if t <= 0.0:
        return math.hypot(px, py)
    if t >= 1.0:
        return math.hypot(px - ex, py - ey)
    return math.hypot(px - t * ex, py - t * ey)


def sector_distance(px: float, py: float, params: SensorParams) -> float:
    """Euclidean distance from a point in the observer frame to the sensing sector.

    The observer sits at the origin facing +x. Zero when the point is inside.
    """
    right, left = params.fov_right_bound, params.fov_left_bound
    reach = params.view_distance
    d = math.hypot(px, py)
    if d == 0.0:
        return 0.0
    center = 0.5 * (left + right)
    half = 0.5 * (left - right)
    off = wrap_angle(math.atan2(py, px) - center)
    if abs(off) <= half:
        return max(0.0, d - reach)
    # Outside the wedge the nearest point lies on one of the straight edges.
    return min(
        _segment_distance(px, py, reach * math.cos(right), reach * math.sin(right)),
        _segment_distance(px, py, reach * math.cos(left), reach * math.sin(left)),
    )


def disc_in_cone(px: float, py: float, radius: float, params: SensorParams) -> bool:
    """True iff the disc centred at observer-frame (px, py) touches the sector."""
    d = math.hypot(px, py)
    if d <= radius:
        return True
    if d - radius > params.view_distance:
        return False
    # Cheap angular reject before the exact distance test.
    center = 0.5 * (params.fov_left_bound + params.fov_right_bound)
    half = 0.5 * (params.fov_left_bound - params.fov_right_bound)
    off = abs(wrap_angle(math.atan2(py, px) - center))
    if off > half + math.asin(radius / d):
        return False
    return sector_distance(px, py, params) <= radius


def to_observer_frame(observer: AgentState, x: float, y: float) -> tuple[float, float]:
    ox, oy = observer.pose.position
    c = math.cos(observer.pose.heading)
    s = math.sin(observer.pose.heading)
    dx, dy = x - ox, y - oy
    return c * dx + s * dy, -s * dx + c * dy


def binary_sense(
    observer: AgentState,
    others: Iterable[AgentState],
    params: SensorParams,
    agent_radius: float,
) -> SensorReading:
    ox, oy = observer.pose.position
    heading = observer.pose.heading
    if not (math.isfinite(ox) and math.isfinite(oy) and math.isfinite(heading)):
        raise DomainError("observer pose is not finite")
    c, s = math.cos(heading), math.sin(heading)
    hit = False
    for other in others:
        x, y = other.pose.position
        if not (math.isfinite(x) and math.isfinite(y)):
            raise DomainError(f"agent {other.id} position is not finite")
        if hit:
            continue
        dx, dy = x - ox, y - oy
        if disc_in_cone(c * dx + s * dy, -s * dx + c * dy, agent_radius, params):
            hit = True
    # Wall sensing is reserved; detect_walls currently has no effect.
    return SensorReading(hit)
