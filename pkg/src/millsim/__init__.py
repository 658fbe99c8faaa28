"""Deterministic headless swarm simulator for binary-sensor milling."""

from .control import ControlOutput, binary_controller, wheel_speeds
from .core import (
    AgentState,
    ConfigError,
    ControllerParams,
    DomainError,
    DynamicsParams,
    Polygon,
    Pose,
    SensorParams,
    SimConfig,
    SwarmMetrics,
    SwarmState,
    Vec2,
    WorldState,
    bearing_to,
    rng_next,
    rng_uniform,
    wrap_angle,
)
from .dynamics import unicycle_step
from .engine import Trace, init_world, run, tick
from .metrics import (
    angular_momentum,
    center_of_mass,
    detect_milling,
    radial_variance,
    scatter,
)
from .sensing import SensorReading, binary_sense

__version__ = "0.1.0"

__all__ = [
    "AgentState",
    "angular_momentum",
    "bearing_to",
    "binary_controller",
    "binary_sense",
    "center_of_mass",
    "ConfigError",
    "ControllerParams",
    "ControlOutput",
    "detect_milling",
    "DomainError",
    "DynamicsParams",
    "init_world",
    "Polygon",
    "Pose",
    "radial_variance",
    "rng_next",
    "rng_uniform",
    "run",
    "scatter",
    "SensorParams",
    "SensorReading",
    "SimConfig",
    "SwarmMetrics",
    "SwarmState",
    "tick",
    "Trace",
    "unicycle_step",
    "Vec2",
    "wheel_speeds",
    "WorldState",
    "wrap_angle",
]
