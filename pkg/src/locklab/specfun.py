"""Hurwitz zeta kernel and the QRS constants.

Everything downstream (the exact locking solver, the bulk/fringe
asymptotics, the closed-form threshold predictions) needs ``zeta(s, q)``
for real s on both sides of s = 1, so the evaluation is done by
Euler-Maclaurin summation, which gives the analytic continuation for
free.  The QRS constant C1 (the unique zero of zeta(1/2, z/2) on (0, 2))
and its companion C2 are computed once and cached.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

# Bernoulli numbers B_2 .. B_16 as exact rationals rendered to float.
_BERNOULLI = {
    2: Fraction(1, 6),
    4: Fraction(-1, 30),
    6: Fraction(1, 42),
    8: Fraction(-1, 30),
    10: Fraction(5, 66),
    12: Fraction(-691, 2730),
    14: Fraction(7, 6),
    16: Fraction(-3617, 510),
}

# B_{2k} / (2k)! for k = 1..8, the form the Euler-Maclaurin tail wants.
_B_OVER_FACT = [float(_BERNOULLI[2 * k] / math.factorial(2 * k)) for k in range(1, 9)]

# Correction terms actually applied (through B10); the B12 term is the
# "first omitted" one used to decide whether the direct-sum cutoff T is
# large enough.
_N_CORRECTIONS = 5

# Accuracy is guaranteed inside this box; outside it the functions still
# evaluate but callers can ask `in_validated_range` and flag the result.
VALIDATED_S_RANGE = (-1.0, 2.0)
VALIDATED_Q_MAX = 3.0


def in_validated_range(s: float, q: float) -> bool:
    """True when (s, q) lies in the accuracy-guaranteed box."""
    return VALIDATED_S_RANGE[0] <= s <= VALIDATED_S_RANGE[1] and 0.0 < q <= VALIDATED_Q_MAX


class ZetaEval(NamedTuple):
    """Value plus a soft diagnostic: was (s, q) inside the validated box?"""

    value: float
    validated: bool


def _check_domain(s: float, q: float) -> None:
    if not q > 0.0:
        raise ValueError(f"hurwitz zeta requires q > 0, got q={q}")
    if s == 1.0:
        raise ValueError("hurwitz zeta has a pole at s = 1")


def hurwitz_zeta(s: float, q: float) -> float:
    """Hurwitz zeta zeta(s, q) = sum_{n>=0} (n+q)^(-s), continued to s < 1.

    Euler-Maclaurin: direct sum of the first T terms, integral tail,
    half-endpoint correction, and Bernoulli corrections through B10.
    T starts at 16 and doubles until the first omitted Bernoulli term
    (the B12 one) is below 1e-14 relative to the partial sum.
    """
    _check_domain(s, q)
    T = 16
    while True:
        direct = math.fsum((q + n) ** (-s) for n in range(T))
        a = q + T
        tail = a ** (1.0 - s) / (s - 1.0)
        half = 0.5 * a ** (-s)
        # k-th correction: B_{2k}/(2k)! * s(s+1)...(s+2k-2) * a^{-s-2k+1}
        poch = s
        apow = a ** (-s - 1.0)
        corr = 0.0
        omitted = 0.0
        for k in range(1, _N_CORRECTIONS + 2):
            term = _B_OVER_FACT[k - 1] * poch * apow
            if k <= _N_CORRECTIONS:
                corr += term
            else:
                omitted = term
            poch *= (s + 2 * k - 1) * (s + 2 * k)
            apow /= a * a
        scale = max(1.0, abs(direct))
        if abs(omitted) <= 1e-14 * scale or T >= 4096:
            return direct + tail + half + corr
        T *= 2


def hurwitz_zeta_eval(s: float, q: float) -> ZetaEval:
    """Like `hurwitz_zeta` but carrying the validated-range diagnostic."""
    return ZetaEval(hurwitz_zeta(s, q), in_validated_range(s, q))


def hurwitz_zeta_dq(s: float, q: float) -> float:
    """Partial derivative d/dq zeta(s, q) = -s * zeta(s+1, q).

    At s = 0 the product -s*zeta(s+1, q) is an indeterminate 0*inf whose
    limit is -1 (consistent with zeta(0, q) = 1/2 - q), so that case is
    returned directly.
    """
    _check_domain(s, q)
    if s == 0.0:
        return -1.0
    return -s * hurwitz_zeta(s + 1.0, q)


@dataclass(frozen=True)
class QrsConstants:
    """The QRS constant C1, its companion C2, and the zeta values at C1/2."""

    c1: float
    c2: float
    zeta_half_at_c1: float       # residual zeta(1/2, c1/2), ~0 by definition
    zeta_neg_half_at_c1: float   # zeta(-1/2, c1/2)
    zeta_three_half_at_c1: float # zeta(3/2, c1/2)

    @property
    def prefactor(self) -> float:
        """4*zeta(-1/2, c1/2), the N^(-3/2) scaling-law prefactor."""
        return 4.0 * self.zeta_neg_half_at_c1


_QRS_LOCK = threading.Lock()
_QRS_CACHE: QrsConstants | None = None


def _solve_c1(residual_tol: float = 1e-12, step_tol: float = 1e-14,
              max_iter: int = 200) -> float:
    """Newton iteration for the zero of zeta(1/2, z/2) on (0, 2).

    Initial guess 0.6, safeguarded by the bracket [0.5, 0.7]: any Newton
    step that leaves the bracket is replaced by a bisection step.
    """
    f = lambda z: hurwitz_zeta(0.5, 0.5 * z)
    lo, hi = 0.5, 0.7
    flo = f(lo)
    if flo * f(hi) >= 0.0:
        raise RuntimeError("c1 bracket [0.5, 0.7] does not straddle a sign change")
    z = 0.6
    fz = f(z)
    for _ in range(max_iter):
        dfz = 0.5 * hurwitz_zeta_dq(0.5, 0.5 * z)
        step = fz / dfz
        z_new = z - step
        if not lo < z_new < hi:
            z_new = 0.5 * (lo + hi)
            step = z - z_new
        f_new = f(z_new)
        if f_new * flo < 0.0:
            hi = z_new
        else:
            lo, flo = z_new, f_new
        z, fz = z_new, f_new
        if abs(step) <= step_tol and abs(fz) <= residual_tol:
            return z
    raise RuntimeError(
        f"c1 iteration did not reach residual {residual_tol:g} "
        f"within {max_iter} iterations (last residual {fz:g})"
    )


def qrs_c2(c1: float) -> float:
    """C2 = C1 - C1^2 - 30*zeta(-1/2, C1/2)/zeta(3/2, C1/2)."""
    if not 0.0 < c1 < 2.0:
        raise ValueError(f"c1 must lie in (0, 2), got {c1}")
    q = 0.5 * c1
    return c1 - c1 * c1 - 30.0 * hurwitz_zeta(-0.5, q) / hurwitz_zeta(1.5, q)


def qrs_c1() -> QrsConstants:
    """The cached QRS constant bundle; computed once, then read-only."""
    global _QRS_CACHE
    if _QRS_CACHE is None:
        with _QRS_LOCK:
            if _QRS_CACHE is None:
                c1 = _solve_c1()
                q = 0.5 * c1
                _QRS_CACHE = QrsConstants(
                    c1=c1,
                    c2=qrs_c2(c1),
                    zeta_half_at_c1=hurwitz_zeta(0.5, q),
                    zeta_neg_half_at_c1=hurwitz_zeta(-0.5, q),
                    zeta_three_half_at_c1=hurwitz_zeta(1.5, q),
                )
    return _QRS_CACHE


def psum_asymptotic(s: float, q: float, m: int) -> float:
    """Three-term large-M approximation of the partial sum
    sum_{k=0}^{M} (k+q)^(-s):

        zeta(s, q) - (1/2)(M+1+q)^(-s) + (M+1+q)^(1-s)/(1-s)
    """
    _check_domain(s, q)
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    edge = m + 1.0 + q
    return hurwitz_zeta(s, q) - 0.5 * edge ** (-s) + edge ** (1.0 - s) / (1.0 - s)
