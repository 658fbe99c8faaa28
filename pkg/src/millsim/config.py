"""INI-style configuration documents.

Grammar, one construct per line::

    # comment (also allowed after a value)
    [section]
    key = value

Sections and keys (all optional; absent keys keep their defaults):

    [world]       tick_rate, num_ticks, num_agents, seed, spawn_radius,
                  agent_radius, arena = "x,y; x,y; x,y; ..." (counter-clockwise)
    [sensor]      view_distance (m), fov_left_bound (deg), fov_right_bound (deg),
                  detect_walls (true/false)
    [controller]  forward_speed (m/s), turn_rate (rad/s)
    [dynamics]    integration (exact_arc | euler), omega_epsilon (rad/s)

Field-of-view bounds are written in degrees and stored in radians; a value
may carry a ``rad`` suffix to give radians directly. Every other quantity is
in SI units.
"""

from __future__ import annotations

import math
from dataclasses import asdict, fields
from typing import Any, Callable

from .core import (
    ConfigError,
    ControllerParams,
    DynamicsParams,
    Polygon,
    SensorParams,
    SimConfig,
    Vec2,
)


def _finite(text: str) -> float:
    value = float(text)
    if not math.isfinite(value):
        raise ValueError("not finite")
    return value


def _integer(text: str) -> int:
    try:
        return int(text, 0)
    except ValueError:
        return int(text)


def _boolean(text: str) -> bool:
    low = text.lower()
    if low in ("true", "yes", "on", "1"):
        return True
    if low in ("false", "no", "off", "0"):
        return False
    raise ValueError("expected true or false")


def _angle(text: str) -> float:
    # Degrees by default; a "rad" suffix keeps values no degree figure reproduces.
    if text.endswith("rad"):
        return _finite(text[:-3])
    return math.radians(_finite(text.removesuffix("deg")))


def _polygon(text: str) -> Polygon:
    points = []
    for chunk in text.split(";"):
        x, y = chunk.split(",")
        points.append(Vec2(_finite(x), _finite(y)))
    return Polygon(tuple(points))


SCHEMA: dict[str, dict[str, Callable[[str], Any]]] = {
    "world": {
        "tick_rate": _finite,
        "num_ticks": _integer,
        "num_agents": _integer,
        "seed": _integer,
        "spawn_radius": _finite,
        "agent_radius": _finite,
        "arena": _polygon,
    },
    "sensor": {
        "view_distance": _finite,
        "fov_left_bound": _angle,
        "fov_right_bound": _angle,
        "detect_walls": _boolean,
    },
    "controller": {"forward_speed": _finite, "turn_rate": _finite},
    "dynamics": {"integration": str, "omega_epsilon": _finite},
}

def parse_config(text: str) -> SimConfig:
    """Parse a config document; absent keys take their defaults."""
    values: dict[str, dict[str, Any]] = {name: {} for name in SCHEMA}
    lines: dict[str, int] = {}
    section = None
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ConfigError(f"malformed section header {raw.strip()!r}", line=number)
            section = line[1:-1].strip()
            if section not in SCHEMA:
                raise ConfigError(f"unknown section [{section}]", line=number)
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", line=number)
        key, _, value = (part.strip() for part in line.partition("="))
        if section is None:
            raise ConfigError("setting outside any section", key=key, line=number)
        if key not in SCHEMA[section]:
            raise ConfigError(f"unknown key in [{section}]", key=key, line=number)
        if key in lines:
            raise ConfigError(f"duplicate key (first set on line {lines[key]})", key=key, line=number)
        try:
            values[section][key] = SCHEMA[section][key](value)
        except (ValueError, TypeError):
            raise ConfigError(f"malformed value {value!r}", key=key, line=number) from None
        lines[key] = number

    try:
        return SimConfig(
            sensor=SensorParams(**values["sensor"]),
            controller=ControllerParams(**values["controller"]),
            dynamics=DynamicsParams(**values["dynamics"]),
            **values["world"],
        )
    except ConfigError as exc:
        raise exc.located(exc.key, lines.get(exc.key)) from None


def _angle_text(rad: float) -> str:
    """Degrees when some double converts back to exactly ``rad``, else radians."""
    deg = math.degrees(rad)
    candidates = [deg]
    up = down = deg
    for _ in range(16):
        up = math.nextafter(up, math.inf)
        down = math.nextafter(down, -math.inf)
        candidates += [up, down]
    for d in candidates:
        if math.radians(d) == rad:
            return repr(d)
    return f"{rad!r} rad"


def serialize_config(config: SimConfig) -> str:
    """Render ``config`` as a document that :func:`parse_config` maps back exactly."""
    arena = "; ".join(f"{p.x!r},{p.y!r}" for p in config.arena.vertices)
    out = [
        "[world]",
        f"tick_rate = {config.tick_rate!r}",
        f"num_ticks = {config.num_ticks}",
        f"num_agents = {config.num_agents}",
        f"seed = {config.seed}",
        f"spawn_radius = {config.spawn_radius!r}",
        f"agent_radius = {config.agent_radius!r}",
        f"arena = {arena}",
        "",
        "[sensor]",
        f"view_distance = {config.sensor.view_distance!r}",
        f"fov_left_bound = {_angle_text(config.sensor.fov_left_bound)}",
        f"fov_right_bound = {_angle_text(config.sensor.fov_right_bound)}",
        f"detect_walls = {'true' if config.sensor.detect_walls else 'false'}",
        "",
        "[controller]",
        f"forward_speed = {config.controller.forward_speed!r}",
        f"turn_rate = {config.controller.turn_rate!r}",
        "",
        "[dynamics]",
        f"integration = {config.dynamics.integration}",
        f"omega_epsilon = {config.dynamics.omega_epsilon!r}",
    ]
    return "\n".join(out) + "\n"


def config_to_dict(config: SimConfig) -> dict[str, Any]:
    """Plain JSON-ready dict; angles stay in radians."""
    d = asdict(config)
    d["arena"] = [[p.x, p.y] for p in config.arena.vertices]
    return d


def config_from_dict(d: dict[str, Any]) -> SimConfig:
    known = {f.name for f in fields(SimConfig)}
    extra = set(d) - known
    if extra:
        raise ConfigError(f"unknown config fields {sorted(extra)}")
    d = dict(d)
    if "sensor" in d:
        d["sensor"] = SensorParams(**d["sensor"])
    if "controller" in d:
        d["controller"] = ControllerParams(**d["controller"])
    if "dynamics" in d:
        d["dynamics"] = DynamicsParams(**d["dynamics"])
    if "arena" in d:
        d["arena"] = Polygon(tuple(Vec2(float(x), float(y)) for x, y in d["arena"]))
    return SimConfig(**d)
