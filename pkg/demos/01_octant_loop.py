"""
Geometric phase of a spin-1/2 loop
===================================

A spin-1/2 state pointing along +z, then +x, then +y and back traces a
loop on the Bloch sphere that encloses one octant. The geometric phase is
minus half the enclosed solid angle: -(4 pi / 8) / 2 = -pi/4.
"""

import numpy as np

from geophase import (
    DiscretizedPath,
    GaugePhases,
    StateVector,
    apply_gauge,
    bargmann_invariant,
    closed_loop_phase,
    geodesic_interpolate,
)

s = np.sqrt(0.5)
up_z = StateVector([1, 0])
up_x = StateVector([s, s])
up_y = StateVector([s, 1j * s])

# The three-vertex product <z|x><x|y><y|z> already carries the answer.
delta = bargmann_invariant(up_z, up_x, up_y)
print(f"Bargmann invariant  {delta:.6f}")
print(f"arg                 {np.angle(delta):.12f}   (pi/4 = {np.pi / 4:.12f})")

# Filling in the edges along great circles does not change it:
# a geodesic contributes no phase of its own.
for n in (1, 4, 32):
    pts = []
    for a, b in ((up_z, up_x), (up_x, up_y), (up_y, up_z)):
        pts += [geodesic_interpolate(a, b, t) for t in np.arange(n) / n]
    loop = DiscretizedPath(pts)
    print(f"{len(loop):4d} points  closed-loop phase {closed_loop_phase(loop):+.15f}")

# Multiplying every point by its own random phase leaves the loop phase alone.
rng = np.random.default_rng(1)
kicked = apply_gauge(loop, GaugePhases.random(len(loop), rng))
print(f"after a random gauge          {closed_loop_phase(kicked):+.15f}")
