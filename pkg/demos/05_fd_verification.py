"""
Finite-difference check of the duality
======================================

A lumped-mass discretisation of a finite piece of the chain is diagonalised
and its eigenvalues compared with the assembled spectrum.  States bound to
the two open ends fall into gaps; they are flagged by their weight on the
end rings.
"""

from fractions import Fraction

import numpy as np

from magchain import Linear, PeriodicList, assemble
from magchain.oracle_fd import assemble_fd, boundary_weight, verify

# A single-band case converges at second order as the grid is refined.
prof = PeriodicList((Fraction(1, 2),))
for M in (30, 60):
    rep = verify(prof, 0.0, 8, M, 12.0, 5e-2)
    print(f"A = 1/2, M = {M}: max distance {rep.max_distance:.4f}, pass={rep.passed}")

# With slope 1/3 the open ends leave states in the gaps.
prof = Linear(Fraction(1, 3), 0)
pred = assemble(prof, 1.0, 4)
for M in (30, 60):
    vals, weight = boundary_weight(assemble_fd(prof, 1.0, 8, M), 12.0)
    d = pred.distance(vals)
    bulk = weight < 0.5
    print(f"alpha = 1/3, M = {M}: all {d.max():.4f}, bulk {d[bulk].max():.4f}, "
          f"end states {np.count_nonzero(~bulk)}")

far = d > 5e-2
print("weights of the far eigenvalues on the end rings:", np.round(weight[far], 3))
