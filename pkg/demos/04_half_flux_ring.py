"""
Half flux quanta in a ring with a pi-junction
=============================================

Cooper pairs with s-wave symmetry on one side of a junction and d-wave on
the other meet in orthogonal angular states. The sign picked at that
crossing makes the junction a pi-junction, and a ring containing an odd
number of them traps flux in half-integer units of Phi0.
"""

import numpy as np

from geophase import (
    Junction,
    PairState,
    RingCircuit,
    angular_overlap,
    fluxoid_states,
    half_flux_limit,
    minimize_ring_energy,
)

s, d = PairState.s_wave(), PairState.d_wave()
print("|<s|d>| =", abs(angular_overlap(s, d)))

for n_pi in range(4):
    ring = RingCircuit((Junction.pi(),) * n_pi + (Junction.conventional(),))
    print(f"{n_pi} pi-junction(s): allowed flux {fluxoid_states(ring, -1, 2).flux_values}")

# With finite self-inductance the flux is set by energy minimization.
# Below beta_L = 1 the pi-ring sits at zero flux; above it, the minimum
# splits in two and the ring holds +-Phi spontaneously.
for beta in (0.5, 0.9, 1.1, 2.0, 10.0):
    ring = RingCircuit((Junction.pi(),), beta)
    lows = minimize_ring_energy(ring)
    e0 = min(m.energy for m in lows)
    ground = sorted(round(m.flux, 6) + 0.0 for m in lows if m.energy - e0 < 1e-9)
    print(f"beta_L = {beta:4}: ground-state flux {ground}")

betas = [2, 5, 10, 50, 100, 1000]
for b, f in zip(betas, half_flux_limit(betas)):
    print(f"beta_L = {b:5}: spontaneous flux {f:.5f} Phi0")

# A conventional ring in zero field carries nothing.
plain = minimize_ring_energy(RingCircuit((Junction.conventional(),), 10.0))
print("conventional ring ground flux:", min(plain, key=lambda m: m.energy).flux)
