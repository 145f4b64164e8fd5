"""
Diagonal dichotomy and local estimates at a density point
=========================================================

On the diagonal the kernel is governed by the inverse-square mass
(1/pi) ∫ g(u) |u - w|^{-2} dA: E(w, w) = 0 exactly when it diverges.
Inside the unit disc it always diverges; outside it is finite with the
closed value -ln(1 - 1/|w|^2).  Where it diverges, |E(lam, w)| decays
like |lam - w|^{gamma} with gamma the Lebesgue density of g at w; both
gamma and the decay exponent are estimated numerically here.
"""

import math

from expkernel import (RadialSchedule, estimate_density,
                       estimate_lipschitz_exponent, integrate_diagonal,
                       unit_disc_density)

g = unit_disc_density()

print("diagonal dichotomy for the unit disc:")
for w in (0.0, 0.5, 0.9, 1.5, 2.0, 4.0):
    dm = integrate_diagonal(g, w, 1e-6)
    if dm.divergent:
        print(f"  w = {w:3}: divergent  =>  E(w, w) = 0")
    else:
        closed = -math.log(1.0 - 1.0 / w ** 2)
        print(f"  w = {w:3}: finite, value {dm.value:.8f} "
              f"(closed {closed:.8f})")

# Lebesgue density at the center, at the boundary, and for a scaled density
print("\ndensity estimates gamma_hat = lim (1/pi r^2) mass(D(w, r)):")
print(f"  unit disc, w = 0    : {estimate_density(g, 0.0):.4f}  (gamma = 1)")
print(f"  unit disc, w = 1    : {estimate_density(g, 1.0):.4f}  (gamma = 0.5)")

# decay of |E(lam, w)| along shrinking circles around w = 0: the log-log
# slope approaches 2 because E(lam, 0) = |lam|^2 exactly
fit = estimate_lipschitz_exponent(g, 0.0, RadialSchedule(2.0 ** -3, 0.5, 8))
print(f"\nlog|E| vs log r slope at w = 0: {fit.slope:.4f} "
      f"(exact 2), fit rms {fit.rms:.2e}")
