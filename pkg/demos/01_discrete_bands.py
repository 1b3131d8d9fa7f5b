"""
Bands of the discrete dual operator
===================================

Rational flux slopes p/q give a periodic Jacobi operator with zero diagonal.
Its spectrum is q bands, or q isolated points when one coupling vanishes.
"""

from fractions import Fraction

import numpy as np

from magchain import Linear, profile_spectrum
from magchain.floquet import (bands_bloch_oracle, discriminant, hausdorff_distance,
                              periodic_window)

# The slope 1/3 with zero offset: couplings 2, 1, -1 repeat (up to sign).
third = Linear(Fraction(1, 3), 0)
print("alpha = 1/3 bands:")
for lo, hi in profile_spectrum(third).intervals:
    print(f"  [{lo:+.6f}, {hi:+.6f}]")

# Bands are where the monodromy trace stays inside [-2, 2].
w = periodic_window(third)
lam = np.linspace(-3.5, 3.5, 8)
print("discriminant samples:", np.round(discriminant(w, lam), 3))

# The Bloch-matrix scan is an independent route to the same bands.
oracle = bands_bloch_oracle(w, 2001)
print("Hausdorff distance to Bloch scan:", hausdorff_distance(profile_spectrum(third), oracle))

# Half flux with half offset switches a coupling off: the chain falls apart
# into dimers and the spectrum is two points.
half = Linear(Fraction(1, 2), Fraction(1, 2))
print("alpha = 1/2, theta = 1/2 points:", profile_spectrum(half).points)
