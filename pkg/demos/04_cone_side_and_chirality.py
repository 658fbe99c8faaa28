"""
Which way does the mill turn?
=============================

The sensing cone spans 4 to 11.5 degrees left of the heading, so a point
dead ahead is invisible and only the width of a body brings it into view.
Moving the cone to the right of centre changes the ring size but not the
rotation sense: the clockwise default turn of the controller sets it.
"""

import math

from millsim import SensorParams, SimConfig, run
from millsim.metrics import detect_milling

left = SensorParams()
right = SensorParams(fov_left_bound=-math.radians(4.0), fov_right_bound=-math.radians(11.5))

for name, sensor in (("left cone", left), ("right cone", right)):
    for seed in range(3):
        trace = run(SimConfig(seed=seed, num_ticks=4000, sensor=sensor))
        m = trace.records[-1].metrics
        print(f"{name:10s} seed {seed}: milling={detect_milling(trace.metric_history())}  "
              f"L={m.angular_momentum:+.3f}  mean radius={m.mean_radius:.2f} m")
