"""
Unit-disc kernel: three closed-form regimes vs adaptive quadrature
==================================================================

The exponential kernel of the unit-disc density has an elementary closed
form that changes shape depending on which of lam, w lie inside the disc.
This script evaluates both routes at one pair per regime and at the
antipodal boundary pair where the universal modulus bound |E| <= 2 is
attained exactly.
"""

import numpy as np

from expkernel import eval_E, eval_E_unit_disc, unit_disc_density

g = unit_disc_density()

# one (lam, w) pair per regime: both inside, mixed, both outside
pairs = [
    (0.5 + 0.0j, 0.0 + 0.0j, "both inside   |lam-w|^2 / (1 - conj(w) lam)"),
    (0.5 + 0.0j, 2.0 + 0.0j, "mixed         conj((w - lam)/w)"),
    (2.0 + 0.0j, 3.0 + 0.0j, "both outside  1 - 1/(conj(w) lam)"),
]

print("quadrature vs closed form, tol = 1e-5")
for lam, w, label in pairs:
    closed = eval_E_unit_disc(lam, w)
    quad = eval_E(g, lam, w, 1e-5)
    diff = abs(quad.value - closed)
    print(f"  {label}")
    print(f"    lam = {lam}, w = {w}")
    print(f"    closed     = {closed:.12g}")
    print(f"    quadrature = {quad.value:.12g}   |diff| = {diff:.2e}")

# the modulus bound |E| <= 2 is sharp: antipodal boundary points reach it
print("\nsharpness of the bound |E| <= 2:")
print(f"  E(1, -1) = {eval_E_unit_disc(1.0, -1.0)}  (exactly 2)")

# Hermitian symmetry E(lam, w) = conj(E(w, lam)) on a random panel
rng = np.random.default_rng(11)
worst = 0.0
for _ in range(50):
    lam, w = (complex(*xy) for xy in rng.uniform(-1.8, 1.8, (2, 2)))
    worst = max(worst, abs(eval_E_unit_disc(lam, w)
                           - np.conj(eval_E_unit_disc(w, lam))))
print(f"\nHermitian symmetry residual over 50 random pairs: {worst:.2e}")
