"""
The s to d crossing as a path of pair states
============================================

Rotating the pair wavefunction from s-wave into d-wave and on to -s-wave
passes through a state orthogonal to the start. The same +-pi swing as in
the polarization demo appears, and its sign follows the sign of the small
admixture eps that breaks the degeneracy.
"""

import numpy as np

from geophase import detect_pi_jump, junction_crossing_path, relative_pancharatnam

for eps in (1e-3, -1e-3):
    path = junction_crossing_path(eps, 2001)
    trace = relative_pancharatnam(path)
    (jump,) = detect_pi_jump(trace)
    print(f"eps={eps:+.0e}: jump {jump.magnitude:+.5f} rad, sign {jump.sign:+d}, "
          f"closest approach |<s|psi>| = {jump.min_overlap:.1e}")

path = junction_crossing_path(1e-3, 9)
print("angles (rad):", np.round(path.timestamps, 3))
print("phase relative to s:", np.round(relative_pancharatnam(path).cumulative_phase, 4))
