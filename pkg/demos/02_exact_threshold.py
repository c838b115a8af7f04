"""Solve the exact locking condition for several system sizes.

At the locking threshold the stable phase-locked state collides with an
unstable one. That saddle-node condition closes into a single scalar
equation for s = sin(theta_max), solved here by a safeguarded
bisection-Newton hybrid. The threshold gamma_L follows directly.
"""

import math

from locklab.locking import FrequencySpec, Rule, locking_threshold_exact

print(f"{'N':>8s} {'rule':>9s} {'sin(theta_max)':>16s} {'r':>10s} "
      f"{'gamma_L':>18s} {'gamma_L - pi/4':>14s}")
for rule in (Rule.MIDPOINT, Rule.ENDPOINT):
    for n in (2, 3, 10, 100, 10**4, 10**6):
        sol = locking_threshold_exact(FrequencySpec(rule, n))
        print(f"{n:>8d} {rule.value:>9s} {sol.sin_theta_max:>16.12f} "
              f"{sol.r:>10.6f} {sol.gamma_l:>18.14f} "
              f"{sol.gamma_l - math.pi / 4:>+14.3e}")

print()
print("Both rules approach pi/4 =", f"{math.pi / 4:.14f}")
print("The endpoint threshold is exactly (1 - 1/N) times the midpoint one.")
