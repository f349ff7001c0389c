"""
A polarization rotated past its orthogonal state
================================================

Rotate a linear polarization by theta. Compared with where it started, the
state is in phase for small theta, orthogonal at theta = pi/2, and back on
the same ray at theta = pi. Exactly at the orthogonal point the phase is
undefined. A tiny ellipticity eps picks a side, and the phase relative to the
start then swings by almost pi over a window of width ~eps.
"""

import numpy as np

from geophase import (
    PolarizationSweep,
    cumulative_pancharatnam,
    detect_pi_jump,
    polarization_sweep_path,
    relative_pancharatnam,
)

for eps in (1e-2, 1e-3, -1e-3, 1e-4):
    path = polarization_sweep_path(PolarizationSweep(eps, steps=2001))
    trace = relative_pancharatnam(path)
    (jump,) = detect_pi_jump(trace)
    print(
        f"eps={eps:+.0e}  jump at theta={path.timestamps[jump.index]:.4f}"
        f"  size {jump.magnitude:+.6f}  pi - |size| = {np.pi - abs(jump.magnitude):.2e}"
    )

# The phase is an arctangent: -arg<psi(0)|psi(theta)> = atan2(c sin, cos)
# with c = 2 eps / (1 + eps^2), which steepens into a step as eps -> 0.
eps = 1e-3
path = polarization_sweep_path(PolarizationSweep(eps, steps=2001))
th = path.timestamps
c = 2 * eps / (1 + eps**2)
closed_form = np.arctan2(c * np.sin(th), np.cos(th))
print("max deviation from closed form:",
      np.abs(relative_pancharatnam(path).cumulative_phase - closed_form).max())

# Consecutive steps, by contrast, never see the crossing: neighbouring states
# stay almost parallel the whole way.
print("smallest consecutive overlap:", cumulative_pancharatnam(path).step_overlap_magnitude.min())
