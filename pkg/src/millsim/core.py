"""Shared domain types, angle helpers and the portable seeded RNG.

All state types are immutable snapshots. Positions are planar (z = 0) and
heading is a yaw angle kept in the half-open interval [-pi, pi).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

TWO_PI = 2.0 * math.pi
MASK64 = (1 << 64) - 1


class DomainError(ValueError):
    """Raised when an operation is called outside its mathematical domain."""


class ConfigError(ValueError):
    """Raised for an invalid configuration value or document.

    ``key`` names the offending setting and ``line`` its line in a config
    document when known.
    """

    def __init__(self, message: str, key: str | None = None, line: int | None = None) -> None:
        self.message = message
        self.key = key
        self.line = line
        super().__init__(self._render())

    def _render(self) -> str:
        where = []
        if self.line is not None:
            where.append(f"line {self.line}")
        if self.key is not None:
            where.append(self.key)
        return ": ".join(where + [self.message])

    def located(self, key: str | None, line: int | None) -> ConfigError:
        return ConfigError(self.message, key if self.key is None else self.key, line)


# ---------------------------------------------------------------------------
# Geometry and state snapshots
# ---------------------------------------------------------------------------


class Vec2(NamedTuple):
    x: float
    y: float


class Pose(NamedTuple):
    position: Vec2
    heading: float


class AgentState(NamedTuple):
    id: int
    pose: Pose
    delta_position: Vec2 = Vec2(0.0, 0.0)
    delta_heading: float = 0.0


class SwarmMetrics(NamedTuple):
    center_of_mass: Vec2
    angular_momentum: float
    scatter: float
    radial_variance: float
    # Stored so the milling detector can normalise without raw states.
    mean_radius: float


class SwarmState(NamedTuple):
    agents: tuple[AgentState, ...]
    metrics: SwarmMetrics


class Polygon(NamedTuple):
    vertices: tuple[Vec2, ...]

    def signed_area(self) -> float:
        v = self.vertices
        n = len(v)
        return 0.5 * sum(v[i].x * v[(i + 1) % n].y - v[(i + 1) % n].x * v[i].y for i in range(n))

    def centroid(self) -> Vec2:
        v = self.vertices
        n = len(v)
        a = self.signed_area()
        cx = cy = 0.0
        for i in range(n):
            p, q = v[i], v[(i + 1) % n]
            c = p.x * q.y - q.x * p.y
            cx += (p.x + q.x) * c
            cy += (p.y + q.y) * c
        return Vec2(cx / (6.0 * a), cy / (6.0 * a))

    def bounds(self) -> tuple[float, float, float, float]:
        xs = [p.x for p in self.vertices]
        ys = [p.y for p in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)


class WorldState(NamedTuple):
    tick: int
    sim_time: float
    swarms: tuple[SwarmState, ...]
    arena: Polygon


def square_arena(half_width: float) -> Polygon:
    h = float(half_width)
    return Polygon((Vec2(-h, -h), Vec2(h, -h), Vec2(h, h), Vec2(-h, h)))


def _segments_cross(p1: Vec2, p2: Vec2, q1: Vec2, q2: Vec2) -> bool:
    def orient(a: Vec2, b: Vec2, c: Vec2) -> float:
        return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)

    d1, d2 = orient(q1, q2, p1), orient(q1, q2, p2)
    d3, d4 = orient(p1, p2, q1), orient(p1, p2, q2)
    return d1 * d2 < 0 and d3 * d4 < 0


def validate_polygon(poly: Polygon) -> None:
    """Check the arena invariants: >= 3 vertices, simple, counter-clockwise."""
    v = poly.vertices
    n = len(v)
    if n < 3:
        raise ConfigError("arena polygon needs at least 3 vertices", key="arena")
    if not all(math.isfinite(p.x) and math.isfinite(p.y) for p in v):
        raise ConfigError("arena polygon has non-finite vertices", key="arena")
    for i in range(n):
        for j in range(i + 2, n):
            if i == 0 and j == n - 1:
                continue
            if _segments_cross(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]):
                raise ConfigError("arena polygon is self-intersecting", key="arena")
    if poly.signed_area() <= 0.0:
        raise ConfigError("arena polygon must wind counter-clockwise", key="arena")


# ---------------------------------------------------------------------------
# Parameters
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SensorParams:
    view_distance: float = 3.0
    fov_left_bound: float = math.radians(11.5)
    fov_right_bound: float = math.radians(4.0)
    detect_walls: bool = False

    def __post_init__(self) -> None:
        if not self.view_distance > 0:
            raise ConfigError("view_distance must be positive", key="view_distance")
        if not self.fov_right_bound < self.fov_left_bound:
            raise ConfigError("fov_right_bound must be less than fov_left_bound", key="fov_right_bound")
        if self.fov_left_bound - self.fov_right_bound >= math.pi:
            raise ConfigError("field of view must be narrower than 180 degrees", key="fov_left_bound")


@dataclass(frozen=True)
class ControllerParams:
    # Defaults come from the grid sweep in demos/calibrate.py.
    forward_speed: float = 0.4
    turn_rate: float = 2.5

    def __post_init__(self) -> None:
        if not self.forward_speed > 0:
            raise ConfigError("forward_speed must be positive", key="forward_speed")
        if not self.turn_rate > 0:
            raise ConfigError("turn_rate must be positive", key="turn_rate")


INTEGRATIONS = ("exact_arc", "euler")


@dataclass(frozen=True)
class DynamicsParams:
    integration: str = "exact_arc"
    omega_epsilon: float = 1e-9

    def __post_init__(self) -> None:
        if self.integration not in INTEGRATIONS:
            raise ConfigError(f"integration must be one of {INTEGRATIONS}", key="integration")
        if not self.omega_epsilon > 0:
            raise ConfigError("omega_epsilon must be positive", key="omega_epsilon")


@dataclass(frozen=True)
class SimConfig:
    tick_rate: float = 30.0
    num_ticks: int = 9000
    num_agents: int = 9
    seed: int = 0
    sensor: SensorParams = field(default_factory=SensorParams)
    controller: ControllerParams = field(default_factory=ControllerParams)
    dynamics: DynamicsParams = field(default_factory=DynamicsParams)
    arena: Polygon = field(default_factory=lambda: square_arena(10.0))
    spawn_radius: float = 1.5
    agent_radius: float = 0.1

    def __post_init__(self) -> None:
        if not self.tick_rate > 0:
            raise ConfigError("tick_rate must be positive", key="tick_rate")
        if self.num_ticks < 0:
            raise ConfigError("num_ticks must be non-negative", key="num_ticks")
        if self.num_agents < 1:
            raise ConfigError("num_agents must be at least 1", key="num_agents")
        if not 0 <= self.seed <= MASK64:
            raise ConfigError("seed must be an unsigned 64-bit integer", key="seed")
        if not self.agent_radius > 0:
            raise ConfigError("agent_radius must be positive", key="agent_radius")
        if not self.spawn_radius > self.agent_radius * self.num_agents / math.pi:
            raise ConfigError("spawn_radius too small to fit num_agents without overlap", key="spawn_radius")
        validate_polygon(self.arena)

    @property
    def dt(self) -> float:
        return 1.0 / self.tick_rate


# ---------------------------------------------------------------------------
# Angles
# ---------------------------------------------------------------------------


def wrap_angle(theta: float) -> float:
    """Map ``theta`` onto [-pi, pi)."""
    if not math.isfinite(theta):
        raise DomainError(f"cannot wrap non-finite angle {theta!r}")
    r = (theta + math.pi) % TWO_PI - math.pi
    # Rounding in the modulo can land exactly on +pi.
    if r >= math.pi:
        r -= TWO_PI
    return r


def bearing_to(observer: Pose, point: Vec2) -> float:
    """Signed bearing of ``point`` relative to the observer heading; positive is left."""
    dx = point.x - observer.position.x
    dy = point.y - observer.position.y
    if dx == 0.0 and dy == 0.0:
        raise DomainError("bearing to a coincident point is undefined")
    return wrap_angle(math.atan2(dy, dx) - observer.heading)


# ---------------------------------------------------------------------------
# SplitMix64
# ---------------------------------------------------------------------------


def rng_next(state: int) -> tuple[int, int]:
    """One SplitMix64 step: returns ``(new_state, output)``."""
    state = (state + 0x9E3779B97F4A7C15) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return state, z ^ (z >> 31)


def rng_uniform(output: int) -> float:
    # Top 53 bits: output / 2**64 would round up to 1.0 for large outputs.
    return (output >> 11) * (1.0 / (1 << 53))


class SplitMix64:
    """Stateful convenience wrapper over :func:`rng_next`."""

    def __init__(self, seed: int) -> None:
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state, out = rng_next(self.state)
        return out

    def uniform(self, low: float = 0.0, high: float = 1.0) -> float:
        return low + (high - low) * rng_uniform(self.next_u64())
