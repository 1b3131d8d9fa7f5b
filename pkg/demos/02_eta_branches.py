"""
The energy map and its monotone branches
========================================

Graph energies z and discrete energies lambda are linked by
eta(z) = gamma sin(pi sqrt z)/sqrt z + 4 cos(pi sqrt z).  Between consecutive
squares the map sweeps [-4, 4] exactly once.
"""

import numpy as np

from magchain import branch_intervals, eta, preimage
from magchain.eta import GAMMA_CRIT

for gamma in (1.0, 0.0, -1.0, -GAMMA_CRIT, -5.0):
    print(f"gamma = {gamma:+.4f}")
    for b in branch_intervals(gamma, 3):
        left = "[" if b.lo_closed else "("
        right = "]" if b.hi_closed else ")"
        print(f"  I_{b.n} = {left}{b.lo:.6f}, {b.hi:.6f}{right}  "
              f"eta: {eta(b.lo, gamma):+.3f} -> {eta(b.hi, gamma):+.3f}")

# Inverting the map: one graph energy per branch for each lambda in [-4, 4].
for n, z in preimage(0.0, 1.0, 3):
    print(f"eta(z) = 0 on branch {n}: z = {z:.10f}, residual {eta(z, 1.0):.1e}")

# Far to the left the map grows without bound.
print("eta(-100, 1) =", eta(np.array([-100.0]), 1.0)[0])
