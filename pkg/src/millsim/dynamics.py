"""Unicycle pose integration."""

from __future__ import annotations

import math

from .control import ControlOutput
from .core import DomainError, DynamicsParams, Pose, Vec2, wrap_angle


def unicycle_step(pose: Pose, cmd: ControlOutput, dt: float, params: DynamicsParams) -> Pose:
    """Advance ``pose`` by ``dt`` seconds under a constant twist.

    ``exact_arc`` follows the circular arc of radius v/omega exactly and falls
    back to a straight line when ``|omega| < omega_epsilon``. ``euler`` is a
    first-order step kept for comparison.
    """
    if not dt > 0:
        raise DomainError(f"dt must be positive, got {dt!r}")
    v, omega = cmd
    if not (math.isfinite(v) and math.isfinite(omega)):
        raise DomainError("command is not finite")
    (x, y), theta = pose
    if params.integration == "euler":
        return Pose(
            Vec2(x + v * dt * math.cos(theta), y + v * dt * math.sin(theta)),
            wrap_angle(theta + omega * dt),
        )
    if abs(omega) < params.omega_epsilon:
        return Pose(Vec2(x + v * dt * math.cos(theta), y + v * dt * math.sin(theta)), theta)
    radius = v / omega
    turned = theta + omega * dt
    return Pose(
        Vec2(
            x + radius * (math.sin(turned) - math.sin(theta)),
            y - radius * (math.cos(turned) - math.cos(theta)),
        ),
        wrap_angle(turned),
    )
