"""
A lone agent circles clockwise
==============================

With nothing in view the binary sensor always reads false, so the controller
always turns right. The agent follows a clockwise circle of radius
forward_speed / turn_rate.
"""

import math

from millsim import SimConfig, run

config = SimConfig(num_agents=1, num_ticks=300, seed=1)
trace = run(config)

radius = config.controller.forward_speed / config.controller.turn_rate
first = trace.records[0].agents[0]
# Centre of the circle sits one radius to the right of the initial heading.
cx = first.x + radius * math.sin(first.heading)
cy = first.y - radius * math.cos(first.heading)

print(f"expected radius {radius:.4f} m about ({cx:.3f}, {cy:.3f})")
for rec in trace.records[::60]:
    a = rec.agents[0]
    print(f"tick {rec.tick:4d}  distance from centre {math.hypot(a.x - cx, a.y - cy):.12f}")
