"""Re-derive a trace from its own agent rows and report the first divergence."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .core import AgentState, Pose, Vec2, WorldState, wrap_angle
from .engine import AgentRow, Trace, init_world, merge, plan_all, world_from_agents
from .trace import METRIC_FIELDS, metric_values

CROSS_BUILD_REL_TOL = 1e-9


@dataclass
class ReplayReport:
    ok: bool
    ticks_checked: int
    tick: int | None = None
    field: str | None = None
    expected: float | bool | None = None
    actual: float | bool | None = None

    def __str__(self) -> str:
        if self.ok:
            return f"replay ok: {self.ticks_checked} ticks verified"
        return (f"divergence at tick {self.tick}, field {self.field}: "
                f"expected {self.expected!r}, recorded {self.actual!r}")


def world_from_rows(rows: Sequence[AgentRow], prev: Sequence[AgentRow] | None,
                    tick: int, trace: Trace) -> WorldState:
    """Rebuild the WorldState a record describes; deltas come from the previous record."""
    agents = []
    for i, r in enumerate(rows):
        if prev is None:
            agents.append(AgentState(r.id, Pose(Vec2(r.x, r.y), r.heading)))
        else:
            p = prev[i]
            agents.append(AgentState(
                r.id, Pose(Vec2(r.x, r.y), r.heading),
                Vec2(r.x - p.x, r.y - p.y), wrap_angle(r.heading - p.heading),
            ))
    return world_from_agents(agents, trace.config, tick)


def replay_verify(trace: Trace, parallelism: int = 1, rel_tol: float = 0.0) -> ReplayReport:
    """Check every metrics row and every tick transition against the engine.

    ``rel_tol=0`` demands bit-exact agreement (same build). Use
    ``CROSS_BUILD_REL_TOL`` for traces written by another build.
    """
    config = trace.config

    def same(a: float, b: float) -> bool:
        if rel_tol == 0.0:
            return a == b
        return math.isclose(a, b, rel_tol=rel_tol, abs_tol=rel_tol)

    def fail(tick: int, name: str, expected, actual) -> ReplayReport:
        return ReplayReport(False, tick, tick, name, expected, actual)

    records = trace.records
    start = init_world(config).swarms[0].agents
    for a, r in zip(start, records[0].agents):
        for name, want, got in (("id", a.id, r.id), ("x", a.pose.position.x, r.x),
                                ("y", a.pose.position.y, r.y), ("heading", a.pose.heading, r.heading)):
            if not same(want, got):
                return fail(0, f"agent {r.id} {name}", want, got)

    pool = ThreadPoolExecutor(max_workers=parallelism) if parallelism > 1 else None
    try:
        prev = None
        for k, rec in enumerate(records):
            world = world_from_rows(rec.agents, prev, rec.tick, trace)
            for name, want, got in zip(METRIC_FIELDS, metric_values(world.swarms[0].metrics),
                                       metric_values(rec.metrics)):
                if not same(want, got):
                    return fail(rec.tick, name, want, got)
            plans = plan_all(world, config, pool, parallelism)
            for p, r in zip(plans, rec.agents):
                if p.sense != r.sense:
                    return fail(rec.tick, f"agent {r.id} sense", p.sense, r.sense)
                for name, want, got in (("v", p.cmd.v, r.v), ("omega", p.cmd.omega, r.omega)):
                    if not same(want, got):
                        return fail(rec.tick, f"agent {r.id} {name}", want, got)
            if k + 1 < len(records):
                nxt = merge(world, plans, config).swarms[0].agents
                after = records[k + 1]
                for a, r in zip(nxt, after.agents):
                    for name, want, got in (("x", a.pose.position.x, r.x),
                                            ("y", a.pose.position.y, r.y),
                                            ("heading", a.pose.heading, r.heading)):
                        if not same(want, got):
                            return fail(after.tick, f"agent {r.id} {name}", want, got)
            prev = rec.agents
    finally:
        if pool is not None:
            pool.shutdown()
    return ReplayReport(True, len(records))
