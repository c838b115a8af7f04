"""Find the locking threshold by direct simulation.

Integrate the oscillator equations with fixed-step RK4, classify each run
as locked or unlocked from the spread of effective frequencies, and
bisect on gamma. The result cross-validates the exact implicit-equation
solver with a completely independent method.
"""

from locklab.dynamics import SimConfig, integrate, threshold_bisect
from locklab.locking import FrequencySpec, Rule, locking_threshold_exact

cfg = SimConfig()

# A single run just below and just above the N = 8 threshold.
exact8 = locking_threshold_exact(FrequencySpec(Rule.MIDPOINT, 8)).gamma_l
for gamma in (0.95 * exact8, 1.05 * exact8):
    out = integrate(FrequencySpec(Rule.MIDPOINT, 8, gamma), cfg)
    print(f"N=8 gamma={gamma:.6f}: {out.verdict.value:>8s}  "
          f"freq spread {out.freq_spread:.2e}  r = {out.order_param_final:.4f}")

print()
print(f"{'N':>4s} {'rule':>9s} {'bisected':>12s} {'exact':>12s} {'diff':>10s}")
for rule in (Rule.MIDPOINT, Rule.ENDPOINT):
    for n in (2, 4, 16):
        spec = FrequencySpec(rule, n)
        sim = threshold_bisect(spec, cfg).gamma_l
        exact = locking_threshold_exact(spec).gamma_l
        print(f"{n:>4d} {rule.value:>9s} {sim:>12.6f} {exact:>12.6f} "
              f"{sim - exact:>+10.1e}")
