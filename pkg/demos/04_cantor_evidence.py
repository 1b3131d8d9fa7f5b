"""
Measure and box dimension along golden approximants
===================================================

For irrational slope the spectrum is a Cantor set.  At desk scale one can
only watch rational approximants: total band measure and a box-counting
dimension estimate along the Fibonacci convergents.
"""

from magchain import Linear, golden_convergents, profile_spectrum
from magchain.spectrum import DEFAULT_SCALES, box_dimension_estimate, total_measure

theta = 0.123
print(" p/q      measure   dimension")
for alpha in golden_convergents(8):
    s = profile_spectrum(Linear(alpha, theta))
    est = box_dimension_estimate(s, DEFAULT_SCALES)
    print(f"{str(alpha):>6}  {total_measure(s):9.5f}  {est.dimension:9.4f}")

# The sequence is not monotone: q = 8 sits close to a degenerate offset
# (one coupling almost vanishes), which shrinks its bands abnormally.
