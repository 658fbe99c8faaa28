from millsim.engine import TickRecord
from millsim.replay import CROSS_BUILD_REL_TOL, replay_verify
from millsim.trace import dumps_trace, loads_trace


def perturb_x(trace, tick, agent=0, amount=1e-12):
    t = loads_trace(dumps_trace(trace))
    rec = t.records[tick]
    rows = list(rec.agents)
    rows[agent] = rows[agent]._replace(x=rows[agent].x + amount)
    t.records[tick] = TickRecord(rec.tick, tuple(rows), rec.metrics)
    return t


def test_run_trace_verifies(short_trace):
    report = replay_verify(short_trace)
    assert report.ok and report.ticks_checked == 101


def test_replay_with_threads(short_trace):
    assert replay_verify(short_trace, parallelism=4).ok


def test_replay_after_file_round_trip(short_trace):
    assert replay_verify(loads_trace(dumps_trace(short_trace))).ok


def test_perturbed_x_reported_at_that_tick(short_trace):
    report = replay_verify(perturb_x(short_trace, 40, agent=2))
    assert not report.ok
    assert report.tick == 40
    assert report.field == "agent 2 x"
    assert report.actual != report.expected
    assert "tick 40" in str(report)


def test_perturbed_initial_state(short_trace):
    report = replay_verify(perturb_x(short_trace, 0))
    assert not report.ok and report.tick == 0


def test_cross_build_tolerance_absorbs_roundoff(short_trace):
    tiny = perturb_x(short_trace, 40, amount=1e-15)
    assert not replay_verify(tiny).ok
    assert replay_verify(tiny, rel_tol=CROSS_BUILD_REL_TOL).ok


def test_metric_row_divergence(short_trace):
    t = loads_trace(dumps_trace(short_trace))
    rec = t.records[10]
    m = rec.metrics._replace(scatter=rec.metrics.scatter * 2)
    t.records[10] = TickRecord(rec.tick, rec.agents, m)
    report = replay_verify(t)
    assert (report.ok, report.tick, report.field) == (False, 10, "scatter")


def test_sense_divergence(short_trace):
    t = loads_trace(dumps_trace(short_trace))
    rec = t.records[7]
    rows = list(rec.agents)
    rows[1] = rows[1]._replace(sense=not rows[1].sense)
    t.records[7] = TickRecord(rec.tick, tuple(rows), rec.metrics)
    report = replay_verify(t)
    assert (report.ok, report.tick, report.field) == (False, 7, "agent 1 sense")
