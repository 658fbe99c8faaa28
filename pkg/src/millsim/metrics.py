"""Swarm-level metrics and a milling detector.

Sums run in ascending agent id so results are bit-reproducible regardless of
how the per-agent work was scheduled.
"""

from __future__ import annotations

import math
from typing import Sequence

from .core import AgentState, DomainError, SwarmMetrics, Vec2

TINY = 1e-12

DEFAULT_WINDOW = 900
DEFAULT_L_MIN = 0.8
DEFAULT_RV_RATIO_MAX = 0.2


def _ordered(agents: Sequence[AgentState]) -> list[AgentState]:
    if not agents:
        raise DomainError("metrics need at least one agent")
    return sorted(agents, key=lambda a: a.id)


def center_of_mass(agents: Sequence[AgentState]) -> Vec2:
    agents = _ordered(agents)
    sx = sy = 0.0
    for a in agents:
        sx += a.pose.position.x
        sy += a.pose.position.y
    n = len(agents)
    return Vec2(sx / n, sy / n)


def _radii(agents: list[AgentState], com: Vec2) -> list[float]:
    return [math.hypot(a.pose.position.x - com.x, a.pose.position.y - com.y) for a in agents]


def angular_momentum(agents: Sequence[AgentState], dt: float) -> float:
    """Mean cross product of unit radial and unit velocity vectors about the COM.

    +1 is a perfect counter-clockwise rotation, -1 clockwise. Agents at the
    COM or not moving contribute zero.
    """
    if not dt > 0:
        raise DomainError(f"dt must be positive, got {dt!r}")
    agents = _ordered(agents)
    com = center_of_mass(agents)
    total = 0.0
    for a in agents:
        rx = a.pose.position.x - com.x
        ry = a.pose.position.y - com.y
        vx = a.delta_position.x / dt
        vy = a.delta_position.y / dt
        rn = math.hypot(rx, ry)
        vn = math.hypot(vx, vy)
        if rn < TINY or vn < TINY:
            continue
        total += (rx * vy - ry * vx) / (rn * vn)
    return total / len(agents)


def scatter(agents: Sequence[AgentState]) -> float:
    """Mean squared distance from the centre of mass."""
    agents = _ordered(agents)
    com = center_of_mass(agents)
    total = 0.0
    for a in agents:
        dx = a.pose.position.x - com.x
        dy = a.pose.position.y - com.y
        total += dx * dx + dy * dy
    return total / len(agents)


def _radial_stats(agents: list[AgentState], com: Vec2) -> tuple[float, float]:
    radii = _radii(agents, com)
    n = len(radii)
    mean = 0.0
    for r in radii:
        mean += r
    mean /= n
    var = 0.0
    for r in radii:
        var += (r - mean) * (r - mean)
    return mean, var / n


def radial_variance(agents: Sequence[AgentState]) -> float:
    agents = _ordered(agents)
    return _radial_stats(agents, center_of_mass(agents))[1]


def mean_radius(agents: Sequence[AgentState]) -> float:
    agents = _ordered(agents)
    return _radial_stats(agents, center_of_mass(agents))[0]


def swarm_metrics(agents: Sequence[AgentState], dt: float) -> SwarmMetrics:
    agents = _ordered(agents)
    com = center_of_mass(agents)
    mu, var = _radial_stats(agents, com)
    return SwarmMetrics(
        center_of_mass=com,
        angular_momentum=angular_momentum(agents, dt),
        scatter=scatter(agents),
        radial_variance=var,
        mean_radius=mu,
    )


def detect_milling(
    metric_history: Sequence[SwarmMetrics],
    window: int = DEFAULT_WINDOW,
    L_min: float = DEFAULT_L_MIN,
    rv_ratio_max: float = DEFAULT_RV_RATIO_MAX,
) -> bool:
    """True when the trailing ``window`` entries all look like a stable ring.

    Requires ``|L| >= L_min`` and ``sqrt(radial_variance) / mean_radius <=
    rv_ratio_max`` at every entry. Too short a history returns False.
    """
    if window < 1:
        raise DomainError("window must be at least 1")
    if not (0 < L_min < 1 and 0 < rv_ratio_max < 1):
        raise DomainError("thresholds must lie in (0, 1)")
    if len(metric_history) < window:
        return False
    for m in metric_history[len(metric_history) - window:]:
        if abs(m.angular_momentum) < L_min:
            return False
        if m.mean_radius <= 0.0:
            return False
        if math.sqrt(m.radial_variance) / m.mean_radius > rv_ratio_max:
            return False
    return True


def milling_onset(
    metric_history: Sequence[SwarmMetrics],
    window: int = DEFAULT_WINDOW,
    L_min: float = DEFAULT_L_MIN,
    rv_ratio_max: float = DEFAULT_RV_RATIO_MAX,
) -> int | None:
    """Index of the first entry that ends a window accepted by :func:`detect_milling`."""
    run = 0
    for i, m in enumerate(metric_history):
        ok = (
            abs(m.angular_momentum) >= L_min
            and m.mean_radius > 0.0
            and math.sqrt(m.radial_variance) / m.mean_radius <= rv_ratio_max
        )
        run = run + 1 if ok else 0
        if run >= window:
            return i
    return None
