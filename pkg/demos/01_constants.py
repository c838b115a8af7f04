"""Compute the zeta-based constants that govern finite-size locking.

The edge oscillator of an evenly spaced Kuramoto chain sits at a phase
whose gap from pi/2 is controlled by two constants, c1 and c2, defined
through the Hurwitz zeta function. This script solves for them and shows
the residuals of their defining relations.
"""

import math

from locklab import specfun

qrs = specfun.qrs_c1()

print("c1 (zero of zeta(1/2, z/2) on (0, 2)):", f"{qrs.c1:.12f}")
print("residual zeta(1/2, c1/2)            :", f"{qrs.zeta_half_at_c1:+.3e}")
print("c2                                  :", f"{qrs.c2:.12f}")
print("4 * zeta(-1/2, c1/2)                :", f"{qrs.prefactor:.12f}")

# The prefactor is the N^(-3/2) coefficient of the threshold expansion
# gamma_L = pi/4 + prefactor * N^(-3/2) + O(N^-2).
for n in (10**2, 10**4, 10**6):
    correction = qrs.prefactor * n**-1.5
    print(f"N = {n:>8d}: predicted gamma_L = {math.pi / 4 + correction:.12f}"
          f"  (correction {correction:.3e})")
