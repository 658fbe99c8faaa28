"""World initialisation, the synchronous tick and the run loop.

A tick has two phases. Phase A evaluates sensor, controller and dynamics for
every agent against the frozen pre-tick world; it is pure per agent and may
run on a worker pool. Phase B merges the results in ascending id order and
computes the swarm metrics. Because nothing in Phase A observes another
agent's new pose, the outcome is bit-identical for any worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import Executor, ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .control import ControlOutput, binary_controller
from .core import (
    TWO_PI,
    AgentState,
    DomainError,
    Pose,
    SimConfig,
    SplitMix64,
    SwarmMetrics,
    SwarmState,
    Vec2,
    WorldState,
    wrap_angle,
)
from .dynamics import unicycle_step
from .metrics import swarm_metrics
from .sensing import binary_sense

MAX_SPAWN_REJECTIONS = 10_000


class SpawnError(RuntimeError):
    """Raised when the spawn disc cannot fit another non-overlapping agent."""


class Plan(NamedTuple):
    """Phase-A result for one agent."""

    sense: bool
    cmd: ControlOutput
    pose: Pose


class AgentRow(NamedTuple):
    id: int
    x: float
    y: float
    heading: float
    sense: bool
    v: float
    omega: float


class TickRecord(NamedTuple):
    tick: int
    agents: tuple[AgentRow, ...]
    metrics: SwarmMetrics


@dataclass
class Trace:
    config: SimConfig
    records: list[TickRecord] = field(default_factory=list)

    def metric_history(self) -> list[SwarmMetrics]:
        return [r.metrics for r in self.records]


def all_agents(world: WorldState) -> list[AgentState]:
    return [a for swarm in world.swarms for a in swarm.agents]


def world_from_agents(agents: Sequence[AgentState], config: SimConfig, tick: int = 0) -> WorldState:
    """Wrap a single swarm of agent snapshots into a WorldState."""
    ordered = tuple(sorted(agents, key=lambda a: a.id))
    if len({a.id for a in ordered}) != len(ordered):
        raise DomainError("agent ids must be unique")
    swarm = SwarmState(ordered, swarm_metrics(ordered, config.dt))
    return WorldState(tick=tick, sim_time=tick * config.dt, swarms=(swarm,), arena=config.arena)


def init_world(config: SimConfig) -> WorldState:
    """Place agents by rejection sampling in the spawn disc around the arena centroid.

    Each attempt draws x, y, heading from the SplitMix64 stream in that order.
    Candidates outside the disc or overlapping an accepted agent are rejected.
    """
    rng = SplitMix64(config.seed)
    cx, cy = config.arena.centroid()
    rs = config.spawn_radius
    min_sep = 2.0 * config.agent_radius
    placed: list[tuple[float, float, float]] = []
    rejections = 0
    while len(placed) < config.num_agents:
        x = cx + rs * (2.0 * rng.uniform() - 1.0)
        y = cy + rs * (2.0 * rng.uniform() - 1.0)
        heading = wrap_angle(-math.pi + TWO_PI * rng.uniform())
        ok = math.hypot(x - cx, y - cy) <= rs and all(
            math.hypot(x - px, y - py) >= min_sep for px, py, _ in placed
        )
        if ok:
            placed.append((x, y, heading))
            rejections = 0
            continue
        rejections += 1
        if rejections >= MAX_SPAWN_REJECTIONS:
            raise SpawnError(
                f"placed {len(placed)} of {config.num_agents} agents before "
                f"{MAX_SPAWN_REJECTIONS} consecutive rejections"
            )
    return world_from_agents(
        [AgentState(i, Pose(Vec2(x, y), h)) for i, (x, y, h) in enumerate(placed)], config)


def plan_agent(world: WorldState, index: int, config: SimConfig) -> Plan:
    """Sense, decide and integrate one agent against the frozen ``world``."""
    agents = all_agents(world)
    me = agents[index]
    others = agents[:index] + agents[index + 1:]
    reading = binary_sense(me, others, config.sensor, config.agent_radius)
    cmd = binary_controller(reading, config.controller)
    pose = unicycle_step(me.pose, cmd, config.dt, config.dynamics)
    return Plan(reading.value, cmd, pose)


def _plan_chunk(world: WorldState, indices: range, config: SimConfig) -> list[Plan]:
    return [plan_agent(world, i, config) for i in indices]


def plan_all(world: WorldState, config: SimConfig, executor: Executor | None = None,
             workers: int = 1) -> list[Plan]:
    """Phase A for every agent, returned in agent order."""
    n = sum(len(s.agents) for s in world.swarms)
    if executor is None or workers <= 1 or n == 1:
        return _plan_chunk(world, range(n), config)
    size = -(-n // workers)
    chunks = [range(lo, min(lo + size, n)) for lo in range(0, n, size)]
    futures = [executor.submit(_plan_chunk, world, c, config) for c in chunks]
    plans: list[Plan] = []
    for f in futures:
        plans.extend(f.result())
    return plans


def merge(world: WorldState, plans: Sequence[Plan], config: SimConfig) -> WorldState:
    """Phase B: apply all plans atomically and recompute swarm metrics."""
    dt = config.dt
    it = iter(plans)
    swarms = []
    for swarm in world.swarms:
        new_agents = []
        for a in swarm.agents:
            p = next(it).pose
            old = a.pose
            new_agents.append(AgentState(
                a.id,
                p,
                Vec2(p.position.x - old.position.x, p.position.y - old.position.y),
                wrap_angle(p.heading - old.heading),
            ))
        new_agents.sort(key=lambda s: s.id)
        agents = tuple(new_agents)
        swarms.append(SwarmState(agents, swarm_metrics(agents, dt)))
    t = world.tick + 1
    return WorldState(tick=t, sim_time=t * dt, swarms=tuple(swarms), arena=world.arena)


def tick(world: WorldState, config: SimConfig, executor: Executor | None = None,
         workers: int = 1) -> WorldState:
    return merge(world, plan_all(world, config, executor, workers), config)


def record_of(world: WorldState, plans: Sequence[Plan]) -> TickRecord:
    swarm = world.swarms[0]
    rows = tuple(
        AgentRow(a.id, a.pose.position.x, a.pose.position.y, a.pose.heading,
                 p.sense, p.cmd.v, p.cmd.omega)
        for a, p in zip(swarm.agents, plans)
    )
    return TickRecord(world.tick, rows, swarm.metrics)


def run(config: SimConfig, parallelism: int = 1) -> Trace:
    """Run ``config.num_ticks`` ticks from :func:`init_world` and record every state.

    Row ``t`` holds the pose at tick ``t`` together with the sensor reading and
    command computed from that pose.
    """
    if parallelism < 1:
        raise DomainError("parallelism must be at least 1")
    trace = Trace(config)
    world = init_world(config)
    pool = ThreadPoolExecutor(max_workers=parallelism) if parallelism > 1 else None
    try:
        for _ in range(config.num_ticks):
            plans = plan_all(world, config, pool, parallelism)
            trace.records.append(record_of(world, plans))
            world = merge(world, plans, config)
        trace.records.append(record_of(world, plan_all(world, config, pool, parallelism)))
    finally:
        if pool is not None:
            pool.shutdown()
    return trace
