"""Binary turn-left / turn-right controller."""

from __future__ import annotations

from typing import NamedTuple

from .core import ControllerParams
from .sensing import SensorReading


class ControlOutput(NamedTuple):
    v: float
    omega: float


def binary_controller(reading: SensorReading | bool, params: ControllerParams) -> ControlOutput:
    """Turn left at full rate when something is sensed, right otherwise.

    Forward speed is the same in both branches.
    """
    if bool(reading):
        return ControlOutput(params.forward_speed, params.turn_rate)
    return ControlOutput(params.forward_speed, -params.turn_rate)


def wheel_speeds(cmd: ControlOutput, track_width: float) -> tuple[float, float]:
    """Convert a body twist to (left, right) wheel rim speeds of a differential drive.

    Not used by the engine; provided for users mapping commands onto hardware.
    """
    half = 0.5 * track_width
    return cmd.v - cmd.omega * half, cmd.v + cmd.omega * half
