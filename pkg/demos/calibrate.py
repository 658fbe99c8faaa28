"""
Controller calibration sweep
============================

Forward speed and turn rate for the binary milling controller are free
parameters. This script grid-sweeps both over 10 seeds of 9,000 ticks each
and picks the cell with the most runs that settle into a mill, breaking ties
by the fastest median onset tick. The winning cell is what
``ControllerParams`` uses as its default.

Run with ``python demos/calibrate.py`` (several minutes; runs use every core).
"""

import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace

from millsim import ControllerParams, SimConfig, run
from millsim.metrics import detect_milling, milling_onset

SPEEDS = (0.1, 0.2, 0.3, 0.4)
TURN_RATES = (0.5, 1.0, 1.5, 2.0, 2.5)
SEEDS = tuple(range(10))
TICKS = 9000


def one_run(args):
    speed, rate, seed = args
    config = replace(SimConfig(), seed=seed, num_ticks=TICKS,
                     controller=ControllerParams(speed, rate))
    history = run(config).metric_history()
    return speed, rate, seed, detect_milling(history), milling_onset(history)


def main():
    jobs = [(s, w, seed) for s in SPEEDS for w in TURN_RATES for seed in SEEDS]
    with ProcessPoolExecutor() as pool:
        results = list(pool.map(one_run, jobs, chunksize=4))

    cells = {}
    for speed, rate, _seed, ok, onset in results:
        hits, onsets = cells.setdefault((speed, rate), [0, []])
        if ok:
            cells[(speed, rate)][0] += 1
            onsets.append(onset)

    print(f"{'speed':>6} {'rate':>5} {'mills':>6} {'median onset':>13}")
    ranked = []
    for (speed, rate), (hits, onsets) in sorted(cells.items()):
        med = statistics.median(onsets) if onsets else float("inf")
        ranked.append((-hits, med, speed, rate))
        print(f"{speed:6.2f} {rate:5.2f} {hits:6d} {med:13.1f}")
    _, med, speed, rate = min(ranked)
    print(f"\nselected forward_speed={speed} turn_rate={rate} (median onset tick {med})")


if __name__ == "__main__":
    main()
