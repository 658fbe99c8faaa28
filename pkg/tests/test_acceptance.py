"""Acceptance gate: one test per criterion, each at its pinned tolerance.

Run alone with ``pytest tests/test_acceptance.py``; a PASS/FAIL line per
criterion is printed in the terminal summary.
"""

import math
import random
import time
from dataclasses import replace

import numpy as np
import pytest

from millsim.config import parse_config, serialize_config
from millsim.control import ControlOutput
from millsim.core import (
    AgentState,
    DynamicsParams,
    Pose,
    SensorParams,
    SimConfig,
    Vec2,
)
from millsim.dynamics import unicycle_step
from millsim.engine import run
from millsim.metrics import detect_milling, milling_onset, swarm_metrics
from millsim.replay import replay_verify
from millsim.sensing import binary_sense
from millsim.trace import dumps_trace, loads_trace, write_trace

from ._report import check
from .oracles import euler_substeps, ray_sense

SEEDS = tuple(range(10))
WINDOW, L_MIN, RV_RATIO_MAX = 900, 0.8, 0.2
MILL_TICKS = 9000
MIRRORED = SensorParams(fov_left_bound=-math.radians(4.0), fov_right_bound=-math.radians(11.5))

pytestmark = pytest.mark.slow


@pytest.fixture(scope="module")
def milling_runs():
    start = time.perf_counter()
    traces = [run(SimConfig(seed=s, num_ticks=MILL_TICKS)) for s in SEEDS]
    return traces, time.perf_counter() - start


@pytest.fixture(scope="module")
def mirrored_runs():
    return [run(SimConfig(seed=s, num_ticks=MILL_TICKS, sensor=MIRRORED)) for s in SEEDS]


DETERMINISM_CONFIGS = (
    SimConfig(seed=0, num_ticks=900),
    SimConfig(seed=123456789, num_ticks=600, num_agents=5, spawn_radius=1.0),
    SimConfig(seed=2**63 + 7, num_ticks=600, dynamics=DynamicsParams(integration="euler")),
)


@pytest.fixture(scope="module")
def determinism_traces(tmp_path_factory):
    root = tmp_path_factory.mktemp("determinism")
    out = {}
    for i, config in enumerate(DETERMINISM_CONFIGS):
        for threads in (1, 2, 8):
            trace = run(config, parallelism=threads)
            path = root / f"c{i}_t{threads}.trace"
            write_trace(trace, path)
            out[(i, threads)] = (trace, path.read_bytes())
    return out


def test_1_milling_emerges(milling_runs):
    traces, elapsed = milling_runs
    ok = [detect_milling(t.metric_history(), WINDOW, L_MIN, RV_RATIO_MAX) for t in traces]
    onsets = [milling_onset(t.metric_history(), WINDOW, L_MIN, RV_RATIO_MAX) for t in traces]
    check("1 milling emergence (>= 8/10 seeds by tick 9000)", sum(ok) >= 8,
          f"{sum(ok)}/10 mill, onset ticks {onsets}")
    check("1 milling runtime (< 60 s for 10 runs)", elapsed < 60.0, f"{elapsed:.1f} s")


def test_2_chirality(milling_runs, mirrored_runs):
    traces, _ = milling_runs
    signs = [math.copysign(1.0, t.records[-1].metrics.angular_momentum)
             for t in traces if detect_milling(t.metric_history())]
    check("2a same rotation sign for every milling seed", len(set(signs)) == 1 and bool(signs),
          f"signs {signs}")
    base = signs[0]
    flipped = sum(
        1 for t in mirrored_runs
        if detect_milling(t.metric_history())
        and math.copysign(1.0, t.records[-1].metrics.angular_momentum) == -base
    )
    mirrored_l = [round(t.records[-1].metrics.angular_momentum, 4) for t in mirrored_runs]
    check("2b mirrored cone flips the sign in >= 8/10 seeds", flipped >= 8,
          f"{flipped}/10 flipped; final L with mirrored cone {mirrored_l}")


def test_3_determinism(determinism_traces):
    mismatches = []
    for i in range(len(DETERMINISM_CONFIGS)):
        ref = determinism_traces[(i, 1)][1]
        for threads in (2, 8):
            if determinism_traces[(i, threads)][1] != ref:
                mismatches.append((i, threads))
    check("3 byte-identical traces for threads 1/2/8 on 3 configs", not mismatches,
          f"mismatches {mismatches}")


def test_4_sensor_matches_ray_oracle():
    rng = random.Random(2024)
    params = SensorParams()
    radius = SimConfig().agent_radius
    mismatches = excluded = positives = 0
    for _ in range(1000):
        obs = AgentState(0, Pose(Vec2(rng.uniform(0, 10), rng.uniform(0, 10)),
                                 rng.uniform(-math.pi, math.pi)))
        targets = [(rng.uniform(0, 10), rng.uniform(0, 10)) for _ in range(rng.randint(1, 8))]
        want, margin = ray_sense(tuple(obs.pose.position), obs.pose.heading, np.array(targets),
                                 radius, params.fov_right_bound, params.fov_left_bound,
                                 params.view_distance)
        if margin < 1e-6:
            excluded += 1
            continue
        others = [AgentState(i + 1, Pose(Vec2(x, y), 0.0)) for i, (x, y) in enumerate(targets)]
        got = binary_sense(obs, others, params, radius).value
        mismatches += got != want
        positives += want
    check("4 analytic sensor vs 1e5-ray oracle on 1000 scenes", mismatches == 0,
          f"{mismatches} mismatches, {positives} positive scenes, {excluded} excluded as tangent")


def test_5_kinematics():
    arc = DynamicsParams()
    out = unicycle_step(Pose(Vec2(0.0, 0.0), 0.0), ControlOutput(1.0, math.pi / 2), 1.0, arc)
    closed = max(abs(out.position.x - 2 / math.pi), abs(out.position.y - 2 / math.pi),
                 abs(out.heading - math.pi / 2))
    ex, ey, eh = euler_substeps(0.0, 0.0, 0.0, 1.0, math.pi / 2, 1.0, 10**6)
    euler = max(abs(out.position.x - ex), abs(out.position.y - ey), abs(out.heading - eh))

    rng = random.Random(55)
    worst_comp = worst_mirror = 0.0
    for _ in range(1000):
        p = Pose(Vec2(rng.uniform(-5, 5), rng.uniform(-5, 5)), rng.uniform(-math.pi, math.pi))
        cmd = ControlOutput(rng.uniform(-1, 1), rng.uniform(-3, 3))
        dt = rng.uniform(0.001, 1.0)
        one = unicycle_step(p, cmd, dt, arc)
        two = unicycle_step(unicycle_step(p, cmd, dt / 2, arc), cmd, dt / 2, arc)
        worst_comp = max(worst_comp, math.dist(one.position, two.position),
                         abs(math.remainder(one.heading - two.heading, 2 * math.pi)))
        right = unicycle_step(p, ControlOutput(cmd.v, -cmd.omega), dt, arc)
        c, s = math.cos(p.heading), math.sin(p.heading)
        dx, dy = one.position.x - p.position.x, one.position.y - p.position.y
        along, across = c * dx + s * dy, -s * dx + c * dy
        mx, my = p.position.x + c * along + s * across, p.position.y + s * along - c * across
        worst_mirror = max(worst_mirror, math.dist((mx, my), right.position),
                           abs(math.remainder(2 * p.heading - one.heading - right.heading,
                                              2 * math.pi)))
    check("5a quarter arc vs closed form (1e-12)", closed <= 1e-12, f"max error {closed:.2e}")
    check("5b quarter arc vs 1e6-substep Euler (1e-5)", euler <= 1e-5, f"max error {euler:.2e}")
    check("5c composition of half steps (1e-9, 1000 commands)", worst_comp <= 1e-9,
          f"worst {worst_comp:.2e}")
    check("5d mirror symmetry (1e-9, 1000 commands)", worst_mirror <= 1e-9,
          f"worst {worst_mirror:.2e}")


def _agents(pts, ds):
    return [AgentState(i, Pose(Vec2(*p), 0.0), Vec2(*d)) for i, (p, d) in enumerate(zip(pts, ds))]


def test_6_metrics_invariance():
    rng = random.Random(77)
    dt = SimConfig().dt
    worst = {"translation": 0.0, "rotation": 0.0, "scale": 0.0, "chirality": 0.0}
    for _ in range(1000):
        n = rng.randint(2, 15)
        pts = [(rng.uniform(-5, 5), rng.uniform(-5, 5)) for _ in range(n)]
        ds = [(rng.uniform(-0.1, 0.1), rng.uniform(-0.1, 0.1)) for _ in range(n)]
        base = swarm_metrics(_agents(pts, ds), dt)

        tx, ty = rng.uniform(-50, 50), rng.uniform(-50, 50)
        m = swarm_metrics(_agents([(x + tx, y + ty) for x, y in pts], ds), dt)
        worst["translation"] = max(
            worst["translation"],
            abs(m.angular_momentum - base.angular_momentum), abs(m.scatter - base.scatter),
            abs(m.radial_variance - base.radial_variance),
            abs(m.center_of_mass.x - base.center_of_mass.x - tx),
            abs(m.center_of_mass.y - base.center_of_mass.y - ty))

        phi = rng.uniform(-math.pi, math.pi)
        c, s = math.cos(phi), math.sin(phi)
        cx, cy = base.center_of_mass
        rp = [(cx + c * (x - cx) - s * (y - cy), cy + s * (x - cx) + c * (y - cy)) for x, y in pts]
        rd = [(c * dx - s * dy, s * dx + c * dy) for dx, dy in ds]
        m = swarm_metrics(_agents(rp, rd), dt)
        worst["rotation"] = max(
            worst["rotation"],
            abs(m.angular_momentum - base.angular_momentum), abs(m.scatter - base.scatter),
            abs(m.radial_variance - base.radial_variance),
            math.dist(m.center_of_mass, base.center_of_mass))

        k = rng.uniform(0.1, 10)
        m = swarm_metrics(_agents([(k * x, k * y) for x, y in pts], ds), dt)
        worst["scale"] = max(
            worst["scale"],
            abs(m.angular_momentum - base.angular_momentum),
            abs(m.scatter - k * k * base.scatter) / max(1.0, k * k * base.scatter),
            abs(m.radial_variance - k * k * base.radial_variance) / max(1.0, k * k * base.radial_variance))

        m = swarm_metrics(_agents([(x, -y) for x, y in pts], [(dx, -dy) for dx, dy in ds]), dt)
        worst["chirality"] = max(
            worst["chirality"],
            abs(m.angular_momentum + base.angular_momentum), abs(m.scatter - base.scatter),
            abs(m.radial_variance - base.radial_variance))

    circle_err = 0.0
    for n in (3, 4, 9, 16):
        for sign in (1, -1):
            pts = [(2 * math.cos(2 * math.pi * k / n), 2 * math.sin(2 * math.pi * k / n)) for k in range(n)]
            ds = [(-sign * 0.01 * math.sin(2 * math.pi * k / n), sign * 0.01 * math.cos(2 * math.pi * k / n))
                  for k in range(n)]
            m = swarm_metrics(_agents(pts, ds), dt)
            circle_err = max(circle_err, abs(m.angular_momentum - sign), abs(m.radial_variance))

    for name, err in worst.items():
        check(f"6 metrics {name} invariance (1e-9, 1000 sets)", err <= 1e-9, f"worst {err:.2e}")
    check("6 perfect circle gives L = +-1, radial variance 0 (1e-12)", circle_err <= 1e-12,
          f"worst {circle_err:.2e}")


def test_7_single_agent_circle():
    config = SimConfig(num_agents=1, num_ticks=1000, seed=31)
    trace = run(config)
    radius = config.controller.forward_speed / config.controller.turn_rate
    a0 = trace.records[0].agents[0]
    cx, cy = a0.x + radius * math.sin(a0.heading), a0.y - radius * math.cos(a0.heading)
    worst = max(abs(math.hypot(r.agents[0].x - cx, r.agents[0].y - cy) - radius)
                for r in trace.records)
    clockwise = all(r.agents[0].omega < 0 for r in trace.records)
    check("7 isolated agent on clockwise circle of radius v/w (1e-6 m, 1000 ticks)",
          worst <= 1e-6 and clockwise, f"worst radial error {worst:.2e} m")


def test_8_round_trips(milling_runs, mirrored_runs, determinism_traces):
    traces = list(milling_runs[0]) + list(mirrored_runs) + [t for t, _ in determinism_traces.values()]
    io_ok = all(loads_trace(dumps_trace(t)) == t for t in traces)
    check("8a trace write/read identity", io_ok, f"{len(traces)} traces")

    rng = random.Random(8)
    cfg_ok = True
    for _ in range(500):
        a, b = sorted(rng.uniform(-1.5, 1.5) for _ in range(2))
        config = replace(
            SimConfig(),
            seed=rng.getrandbits(64),
            tick_rate=rng.uniform(1, 120),
            num_ticks=rng.randint(0, 10**5),
            sensor=SensorParams(rng.uniform(0.1, 10), b, a, rng.random() < 0.5),
            agent_radius=rng.uniform(0.01, 0.2),
        )
        cfg_ok &= parse_config(serialize_config(config)) == config
    check("8b config parse/serialize identity (500 random configs)", cfg_ok)

    failures = [str(r) for r in (replay_verify(t) for t in traces) if not r.ok]
    check("8c replay_verify succeeds on every trace from criteria 1-3", not failures,
          f"{len(traces) - len(failures)}/{len(traces)} verified")
