"""Measure the finite-size scaling exponents by log-log regression.

The gap gamma_L - pi/4 decays as N^(-3/2) for the midpoint rule and as
N^(-1) for the endpoint rule; the residual of the two-term prediction
decays roughly as N^(-5/2). This script sweeps a geometric ladder of
sizes and fits each power law.
"""

import math

from locklab import specfun
from locklab.harness import fit_power_law, geometric_ladder, prefactor_extract, sweep
from locklab.locking import Rule

ladder = geometric_ladder("16:16384:2")

for rule in (Rule.MIDPOINT, Rule.ENDPOINT):
    rows = sweep(rule, ladder)
    gap = fit_power_law([(r.n, abs(r.gamma_exact - math.pi / 4)) for r in rows])
    print(f"{rule.value:>9s} gap exponent      : {gap.exponent:+.4f}  "
          f"(R^2 = {gap.r_squared:.6f})")

rows = sweep(Rule.MIDPOINT, ladder)
res = fit_power_law([(r.n, abs(r.residual)) for r in rows])
print(f"{'midpoint':>9s} residual exponent : {res.exponent:+.4f}  "
      f"(R^2 = {res.r_squared:.6f})")

print()
print("Extracted N^(-3/2) prefactor, (gamma_L - pi/4) * N^(3/2):")
for n, value in prefactor_extract(Rule.MIDPOINT, [10**2, 10**3, 10**4, 10**5]):
    print(f"  N = {n:>6d}: {value:.9f}")
print(f"  target 4*zeta(-1/2, c1/2) = {specfun.qrs_c1().prefactor:.9f}")
