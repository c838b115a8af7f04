"""Exact finite-N locking machinery.

Frequency-rule generators, the implicit saddle-node equation for the
maximal phase, the self-consistent order parameter at threshold, and the
exact locking threshold gamma_L for each frequency rule.

The two generalized families from the discussion of the scaling laws
(the sigma-beta family and the zeta-corrected family) are specified as
ramps starting at 0; they are shifted into the zero-mean rotating frame
before normalization, which is the frame in which the saddle-node
condition applies.  After centering, every rule shares the same
normalized frequencies nu_j = -1 + 2(j-1)/(N-1); the rules differ only
in how the maximal frequency maps back to gamma_L.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import specfun


class Rule(str, enum.Enum):
    MIDPOINT = "midpoint"
    ENDPOINT = "endpoint"
    SIGMA_BETA = "sigma-beta"
    ZETA_CORRECTED = "zeta-corrected"


@dataclass(frozen=True)
class FrequencySpec:
    """Which deterministic rule generates the natural frequencies."""

    rule: Rule
    n: int
    gamma: float = 1.0
    sigma: float | None = None  # sigma-beta family only
    beta: float | None = None   # sigma-beta family only

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"need at least 2 oscillators, got n={self.n}")
        if not self.gamma > 0.0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")
        if self.rule is Rule.SIGMA_BETA:
            if self.sigma is None or not 0.0 < self.sigma < 1.5:
                raise ValueError(f"sigma must lie in (0, 3/2), got {self.sigma}")
            if self.beta is None or self.beta == 0.0:
                raise ValueError("beta must be nonzero for the sigma-beta family")
        elif self.sigma is not None or self.beta is not None:
            raise ValueError(f"sigma/beta only apply to the sigma-beta family, not {self.rule.value}")


def scale_factor(spec: FrequencySpec) -> float:
    """The gamma-coefficient of the (centered) maximal frequency.

    At threshold the centered maximal frequency equals
    gamma_L * scale_factor, so gamma_L = omega_max / scale_factor.
    """
    n = spec.n
    if spec.rule is Rule.MIDPOINT:
        return 1.0 - 1.0 / n
    if spec.rule is Rule.ENDPOINT:
        return 1.0
    if spec.rule is Rule.SIGMA_BETA:
        return (1.0 - spec.beta / n ** spec.sigma) * (1.0 - 1.0 / n)
    # zeta-corrected family
    zneg = specfun.qrs_c1().zeta_neg_half_at_c1
    return 1.0 - 1.0 / n + (16.0 / math.pi) * zneg * n ** -1.5


def _antisymmetric_ramp(n: int, values_neg: np.ndarray) -> np.ndarray:
    """Mirror the strictly-negative half into an exactly antisymmetric array."""
    if n % 2:
        return np.concatenate([values_neg, [0.0], -values_neg[::-1]])
    return np.concatenate([values_neg, -values_neg[::-1]])


def make_frequencies(spec: FrequencySpec) -> np.ndarray:
    """Natural frequencies omega_1 < ... < omega_N for the chosen rule.

    Midpoint/endpoint arrays are built by mirroring one half so the
    antisymmetry omega_j = -omega_{N+1-j} holds exactly in floating point.
    """
    n, g = spec.n, spec.gamma
    if spec.rule is Rule.MIDPOINT:
        j = np.arange(1, n // 2 + 1, dtype=float)
        omega = _antisymmetric_ramp(n, g * (-1.0 + (2.0 * j - 1.0) / n))
    elif spec.rule is Rule.ENDPOINT:
        j = np.arange(1, n // 2 + 1, dtype=float)
        omega = _antisymmetric_ramp(n, g * (-1.0 + 2.0 * (j - 1.0) / (n - 1.0)))
    else:
        j = np.arange(1, n + 1, dtype=float)
        omega = g * scale_factor(spec) * (2.0 * (j - 1.0) / (n - 1.0))
    if not np.all(np.diff(omega) > 0.0):
        raise ValueError(f"{spec.rule.value} rule produced non-increasing frequencies (spec={spec})")
    return omega


def normalized(spec: FrequencySpec) -> np.ndarray:
    """Normalized frequencies nu_j = omega_j / omega_N in the zero-mean frame.

    For every supported rule this is the exact antisymmetric ramp
    nu_j = -1 + 2(j-1)/(N-1); the sigma-beta and zeta-corrected ramps
    reduce to it after centering.
    """
    n = spec.n
    j = np.arange(1, n // 2 + 1, dtype=float)
    return _antisymmetric_ramp(n, -1.0 + 2.0 * (j - 1.0) / (n - 1.0))


@dataclass(frozen=True)
class LockingSolution:
    """Exact finite-N solution bundle at the locking threshold."""

    sin_theta_max: float
    r: float            # order parameter at threshold
    omega_max: float    # = r * sin_theta_max
    gamma_l: float
    residual: float     # value of the implicit equation at the returned root


def _fold(nu: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Unique squared magnitudes with multiplicities.

    When nu is exactly antisymmetric, nu_j^2 = nu_{N+1-j}^2, so averages
    are taken over one half with weight 2 (middle term weight 1 for odd
    N).  Halves the work and enforces the symmetry exactly.
    """
    n = len(nu)
    if n >= 2 and np.array_equal(nu, -nu[::-1]):
        h = n // 2
        nusq = nu[:h] ** 2
        w = np.full(h, 2.0)
        if n % 2:
            nusq = np.append(nusq, 0.0)
            w = np.append(w, 1.0)
        return nusq, w
    return nu.astype(float) ** 2, np.ones(n)


def _margin(nusq: np.ndarray, w: np.ndarray, n: int, s: float,
            with_slope: bool = False):
    """G(s) = 2<sqrt(1-nu^2 s^2)> - <1/sqrt(1-nu^2 s^2)>, optionally G'(s).

    1 - nu^2 s^2 is evaluated as (1 - nu*s)(1 + nu*s) to keep the
    near-singular edge terms accurate.
    """
    root = np.sqrt(np.abs(nusq)) * s
    a = (1.0 - root) * (1.0 + root)
    sq = np.sqrt(a)
    g = (2.0 * np.sum(w * sq) - np.sum(w / sq)) / n
    if not with_slope:
        return g
    gp = -s * np.sum(w * nusq * (2.0 / sq + 1.0 / (a * sq))) / n
    return g, gp


def lock_margin(nu: np.ndarray, s: float) -> float:
    """Left minus right side of the saddle-node condition at sin(theta_N) = s.

    G(0) = 1 and G decreases to -inf as s -> 1 when some |nu_j| = 1; the
    locking root is the zero of G on (0, 1).
    """
    nu = np.asarray(nu, dtype=float)
    if not 0.0 <= s < 1.0:
        raise ValueError(f"s must lie in [0, 1), got {s}")
    if np.any(np.abs(nu) > 1.0):
        raise ValueError("normalized frequencies must satisfy |nu_j| <= 1")
    nusq, w = _fold(nu)
    return _margin(nusq, w, len(nu), s)


def solve_sin_theta_max(nu: np.ndarray, residual_tol: float = 1e-13,
                        max_iter: int = 200) -> float:
    """Root s* in (0, 1) of the implicit threshold equation.

    Bisection on [0, 1 - 2^-40] guarantees containment; once the bracket
    is below 1e-6 wide, Newton (analytic G') finishes the job.  Returns
    the iterate with the smallest |G| seen.
    """
    nu = np.asarray(nu, dtype=float)
    if not np.any(np.isclose(np.abs(nu), 1.0, rtol=0.0, atol=1e-12)):
        raise ValueError("nu must contain an entry with |nu_j| = 1")
    n = len(nu)
    nusq, w = _fold(nu)

    lo, hi = 0.0, 1.0 - 2.0 ** -40
    g_hi = _margin(nusq, w, n, hi)
    if g_hi >= 0.0:
        raise RuntimeError("no sign change on [0, 1 - 2^-40]; cannot bracket the root")
    while hi - lo > 1e-6:
        mid = 0.5 * (lo + hi)
        if _margin(nusq, w, n, mid) > 0.0:
            lo = mid
        else:
            hi = mid

    s = 0.5 * (lo + hi)
    best_s, best_g = s, math.inf
    for _ in range(max_iter):
        g, gp = _margin(nusq, w, n, s, with_slope=True)
        if abs(g) < abs(best_g):
            best_s, best_g = s, g
        if abs(g) <= residual_tol:
            return s
        if g > 0.0:
            lo = s
        else:
            hi = s
        step = g / gp
        s_new = s - step
        if not lo < s_new < hi:
            s_new = 0.5 * (lo + hi)
        if s_new == s:
            break
        s = s_new
    if abs(best_g) <= 100.0 * residual_tol:
        # Converged to the floating-point limit of G; good enough.
        return best_s
    raise RuntimeError(
        f"threshold root did not converge: best residual {best_g:g} "
        f"exceeds {residual_tol:g}"
    )


def order_param_at_threshold(nu: np.ndarray, s: float) -> float:
    """Order parameter r = (1/2) <1/sqrt(1 - nu_j^2 s^2)> at the solved root."""
    nu = np.asarray(nu, dtype=float)
    if not 0.0 < s < 1.0:
        raise ValueError(f"s must lie in (0, 1), got {s}")
    nusq, w = _fold(nu)
    root = np.sqrt(np.abs(nusq)) * s
    a = (1.0 - root) * (1.0 + root)
    return 0.5 * np.sum(w / np.sqrt(a)) / len(nu)


def locking_threshold_exact(spec: FrequencySpec) -> LockingSolution:
    """Exact locking threshold for the given frequency rule.

    Solves the implicit equation for s*, forms r and omega_max = r*s*,
    and maps omega_max to gamma_L through the rule's scale factor.
    """
    nu = normalized(spec)
    s = solve_sin_theta_max(nu)
    r = order_param_at_threshold(nu, s)
    omega_max = r * s
    return LockingSolution(
        sin_theta_max=s,
        r=r,
        omega_max=omega_max,
        gamma_l=omega_max / scale_factor(spec),
        residual=lock_margin(nu, s),
    )
