"""
Assembling the chain-graph spectrum
===================================

Each branch of the energy map carries a copy of the discrete spectrum; the
points n^2 belong to compactly supported loop states and sit in the gaps.
"""

from fractions import Fraction

from magchain import Linear, assemble
from magchain.csvio import bands_csv

g = assemble(Linear(Fraction(1, 3), 0), gamma=1.0, n_max=3)
for part in g.parts:
    print(f"sigma_{part.n}: " + ", ".join(f"[{lo:.5f}, {hi:.5f}]" for lo, hi in part.intervals))
for gap in g.gaps:
    inside = "inside" if gap.contains_dirichlet() else "outside"
    print(f"gap {gap.n}: ({gap.lo:.5f}, {gap.hi:.5f}) with {gap.n ** 2} {inside}")

# Without field and coupling the parts fill the half-line edge to edge.
free = assemble(Linear(0, 0), gamma=0.0, n_max=3)
print("free chain parts:", [tuple(p.intervals[0]) for p in free.parts])

print()
print(bands_csv(g))
