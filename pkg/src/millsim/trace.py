"""Line-oriented trace files and CSV metric export.

Layout (UTF-8, one record per line)::

    MILLSIM-TRACE 1 {"tick_rate": 30.0, ...}        header: version + JSON config
    A tick id x y heading sense v omega              one per agent, ascending id
    M tick com_x com_y L scatter radial_var mean_radius

Each tick contributes ``num_agents`` A rows followed by one M row. Floats are
written with 17 significant digits so every double survives the round trip.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import IO, Iterable

from .config import config_from_dict, config_to_dict
from .core import ConfigError, SwarmMetrics, Vec2
from .engine import AgentRow, TickRecord, Trace

MAGIC = "MILLSIM-TRACE"
VERSION = 1

METRIC_FIELDS = (
    "com_x", "com_y", "angular_momentum", "scatter", "radial_variance", "mean_radius",
)


class TraceFormatError(ValueError):
    def __init__(self, line: int, message: str) -> None:
        self.line = line
        super().__init__(f"line {line}: {message}")


def fmt(x: float) -> str:
    return format(x, ".17g")


def metric_values(m: SwarmMetrics) -> tuple[float, ...]:
    return (m.center_of_mass.x, m.center_of_mass.y, m.angular_momentum,
            m.scatter, m.radial_variance, m.mean_radius)


def trace_lines(trace: Trace) -> Iterable[str]:
    header = json.dumps(config_to_dict(trace.config), sort_keys=True)
    yield f"{MAGIC} {VERSION} {header}"
    for rec in trace.records:
        t = rec.tick
        for a in rec.agents:
            yield (f"A {t} {a.id} {fmt(a.x)} {fmt(a.y)} {fmt(a.heading)} "
                   f"{int(a.sense)} {fmt(a.v)} {fmt(a.omega)}")
        yield f"M {t} " + " ".join(fmt(v) for v in metric_values(rec.metrics))


def dumps_trace(trace: Trace) -> str:
    return "".join(line + "\n" for line in trace_lines(trace))


def write_trace(trace: Trace, destination: str | Path | IO[str]) -> None:
    if hasattr(destination, "write"):
        destination.write(dumps_trace(trace))
        return
    Path(destination).write_text(dumps_trace(trace), encoding="utf-8")


def _floats(parts: list[str], number: int) -> list[float]:
    try:
        return [float(p) for p in parts]
    except ValueError:
        raise TraceFormatError(number, "malformed number") from None


def loads_trace(text: str) -> Trace:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise TraceFormatError(1, "empty trace")

    head = lines[0].split(" ", 2)
    if len(head) != 3 or head[0] != MAGIC:
        raise TraceFormatError(1, "missing trace header")
    if head[1] != str(VERSION):
        raise TraceFormatError(1, f"unsupported trace version {head[1]!r} (expected {VERSION})")
    try:
        config = config_from_dict(json.loads(head[2]))
    except (ValueError, TypeError, ConfigError) as exc:
        raise TraceFormatError(1, f"bad config in header: {exc}") from None

    n = config.num_agents
    expected_lines = 1 + (config.num_ticks + 1) * (n + 1)
    trace = Trace(config)
    rows: list[AgentRow] = []
    for number, line in enumerate(lines[1:], start=2):
        parts = line.split(" ")
        tick = len(trace.records)
        if tick > config.num_ticks:
            raise TraceFormatError(number, f"extra content after tick {config.num_ticks}")
        if parts[0] == "A":
            if len(parts) != 9:
                raise TraceFormatError(number, "A row needs 9 fields")
            if len(rows) == n:
                raise TraceFormatError(number, f"more than {n} agent rows for tick {tick}")
            try:
                t, agent_id, sense = int(parts[1]), int(parts[2]), int(parts[6])
            except ValueError:
                raise TraceFormatError(number, "malformed integer") from None
            if t != tick:
                raise TraceFormatError(number, f"expected tick {tick}, found {t}")
            if sense not in (0, 1):
                raise TraceFormatError(number, "sense must be 0 or 1")
            x, y, heading, v, omega = _floats(parts[3:6] + parts[7:9], number)
            if rows and agent_id <= rows[-1].id:
                raise TraceFormatError(number, "agent ids must ascend")
            rows.append(AgentRow(agent_id, x, y, heading, bool(sense), v, omega))
        elif parts[0] == "M":
            if len(parts) != 8:
                raise TraceFormatError(number, "M row needs 8 fields")
            try:
                t = int(parts[1])
            except ValueError:
                raise TraceFormatError(number, "malformed integer") from None
            if t != tick:
                raise TraceFormatError(number, f"expected tick {tick}, found {t}")
            if len(rows) != n:
                raise TraceFormatError(number, f"tick {tick} has {len(rows)} agent rows, expected {n}")
            cx, cy, L, sc, rv, mu = _floats(parts[2:], number)
            trace.records.append(TickRecord(tick, tuple(rows), SwarmMetrics(Vec2(cx, cy), L, sc, rv, mu)))
            rows = []
        else:
            raise TraceFormatError(number, f"unknown row type {parts[0]!r}")

    if len(trace.records) != config.num_ticks + 1:
        raise TraceFormatError(
            len(lines) + 1,
            f"truncated: {len(lines)} lines, expected {expected_lines}",
        )
    return trace


def read_trace(source: str | Path | IO[str]) -> Trace:
    if hasattr(source, "read"):
        return loads_trace(source.read())
    return loads_trace(Path(source).read_text(encoding="utf-8"))


def export_metrics_csv(trace: Trace, destination: str | Path) -> int:
    """Write the M rows as CSV with a header; returns the number of data rows."""
    with open(destination, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(("tick",) + METRIC_FIELDS)
        for rec in trace.records:
            writer.writerow([rec.tick] + [fmt(v) for v in metric_values(rec.metrics)])
    return len(trace.records)
