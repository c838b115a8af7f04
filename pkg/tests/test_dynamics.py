import math
from dataclasses import replace

import numpy as np
import pytest
from scipy.integrate import solve_ivp

from locklab.dynamics import (
    SeedPhases,
    SimConfig,
    SimOutcome,
    Verdict,
    initial_phases,
    integrate,
    order_parameter,
    rk4_integrate,
    threshold_bisect,
    vector_field,
)
from locklab.locking import (
    FrequencySpec,
    Rule,
    locking_threshold_exact,
    make_frequencies,
    normalized,
    order_param_at_threshold,
    solve_sin_theta_max,
)

CFG = SimConfig()


def double_sum_field(phases, omegas):
    """O(N^2) oracle: the pairwise coupling sum, term by term."""
    n = len(phases)
    out = np.empty(n)
    for i in range(n):
        out[i] = omegas[i] + sum(math.sin(phases[j] - phases[i]) for j in range(n)) / n
    return out


class TestVectorField:
    def test_synchronized_fixed_point(self):
        theta = np.full(7, 1.234)
        assert np.all(vector_field(theta, np.zeros(7)) == 0.0)

    @pytest.mark.parametrize("n", [2, 5, 50])
    def test_matches_double_sum(self, n):
        rng = np.random.default_rng(n)
        theta = rng.uniform(-math.pi, math.pi, n)
        omegas = rng.normal(0.0, 0.5, n)
        np.testing.assert_allclose(vector_field(theta, omegas),
                                   double_sum_field(theta, omegas), atol=1e-13)

    def test_antisymmetric_input_gives_antisymmetric_output(self):
        theta = np.array([-0.9, -0.2, 0.2, 0.9])
        omegas = np.array([-1.0, -0.3, 0.3, 1.0])
        v = vector_field(theta, omegas)
        np.testing.assert_allclose(v, -v[::-1], atol=1e-15)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            vector_field(np.zeros(3), np.zeros(4))


class TestOrderParameter:
    def test_perfect_coherence(self):
        r, psi = order_parameter(np.full(5, 0.7))
        assert r == pytest.approx(1.0, rel=1e-15)
        assert psi == pytest.approx(0.7, rel=1e-15)

    @pytest.mark.parametrize("n", [2, 3, 8])
    def test_roots_of_unity_cancel(self, n):
        theta = 2.0 * math.pi * np.arange(n) / n
        r, _ = order_parameter(theta)
        assert r <= 1e-14

    def test_threshold_configuration_matches_exact_solver(self):
        for n in (4, 37):
            nu = normalized(FrequencySpec(Rule.MIDPOINT, n))
            s = solve_sin_theta_max(nu)
            r, psi = order_parameter(np.arcsin(nu * s))
            assert r == pytest.approx(order_param_at_threshold(nu, s), abs=1e-12)
            assert abs(psi) <= 1e-12

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            order_parameter(np.array([]))


class TestIntegrate:
    def test_n2_below_threshold_locks(self):
        out = integrate(FrequencySpec(Rule.MIDPOINT, 2, 0.9), CFG)
        assert out.verdict is Verdict.LOCKED
        assert out.freq_spread <= CFG.lock_tolerance

    def test_n2_above_threshold_unlocks(self):
        out = integrate(FrequencySpec(Rule.MIDPOINT, 2, 1.1), CFG)
        assert out.verdict is Verdict.UNLOCKED

    def test_tiny_gamma_locks_tightly(self):
        out = integrate(FrequencySpec(Rule.MIDPOINT, 5, 1e-9), CFG)
        assert out.verdict is Verdict.LOCKED
        assert out.freq_spread <= 1e-12
        assert out.order_param_final == pytest.approx(1.0, abs=1e-6)

    def test_zero_seed_also_locks(self):
        cfg = replace(CFG, seed_phases=SeedPhases.ZERO)
        out = integrate(FrequencySpec(Rule.MIDPOINT, 4, 0.5), cfg)
        assert out.verdict is Verdict.LOCKED

    def test_rotating_frame_invariance(self):
        # adding c to every omega shifts effective frequencies by c and
        # leaves the verdict unchanged
        c = 0.37
        spec = FrequencySpec(Rule.MIDPOINT, 4, 0.8)
        omegas = make_frequencies(spec)
        theta0 = initial_phases(spec, SeedPhases.FROM_EXACT_SOLUTION)
        nsteps = 2000
        base = rk4_integrate(theta0, omegas, CFG.dt, nsteps)
        shifted = rk4_integrate(theta0, omegas + c, CFG.dt, nsteps)
        t_total = nsteps * CFG.dt
        np.testing.assert_allclose((shifted - theta0) / t_total,
                                   (base - theta0) / t_total + c, atol=1e-9)

    def test_determinism(self):
        spec = FrequencySpec(Rule.ENDPOINT, 6, 0.71)
        a = integrate(spec, CFG)
        b = integrate(spec, CFG)
        assert a == b  # bit-identical outcome

    def test_config_validation(self):
        with pytest.raises(ValueError):
            SimConfig(dt=0.0)
        with pytest.raises(ValueError):
            SimConfig(identification_time=0.5)
        with pytest.raises(ValueError):
            SimConfig(max_transient=10.0)


class TestRk4Order:
    def test_global_error_scales_as_dt4(self):
        # N=2 reduces to the phase-difference ODE phi' = dw - sin(phi)
        spec = FrequencySpec(Rule.MIDPOINT, 2, 0.9)
        omegas = make_frequencies(spec)
        dw = omegas[1] - omegas[0]
        theta0 = initial_phases(spec, SeedPhases.ZERO)
        sol = solve_ivp(lambda t, y: dw - np.sin(y), (0.0, 10.0), [0.0],
                        rtol=1e-12, atol=1e-14)
        phi_ref = sol.y[0, -1]
        errs = []
        for dt in (0.2, 0.1, 0.05):
            theta = rk4_integrate(theta0, omegas, dt, round(10.0 / dt))
            errs.append(abs((theta[1] - theta[0]) - phi_ref))
        for e_coarse, e_fine in zip(errs, errs[1:]):
            ratio = e_coarse / e_fine
            assert 16.0 / 1.5 <= ratio <= 16.0 * 1.5


class TestBisect:
    def test_n2_midpoint(self):
        res = threshold_bisect(FrequencySpec(Rule.MIDPOINT, 2), CFG)
        assert res.gamma_l == pytest.approx(1.0, abs=2 * CFG.gamma_bisect_tol)
        assert all(isinstance(v, Verdict) for _, v in res.probes)

    def test_n2_endpoint(self):
        res = threshold_bisect(FrequencySpec(Rule.ENDPOINT, 2), CFG)
        assert res.gamma_l == pytest.approx(0.5, abs=2 * CFG.gamma_bisect_tol)

    def test_n16_against_exact(self):
        res = threshold_bisect(FrequencySpec(Rule.MIDPOINT, 16), CFG)
        exact = locking_threshold_exact(FrequencySpec(Rule.MIDPOINT, 16)).gamma_l
        assert abs(res.gamma_l - exact) <= 2 * CFG.gamma_bisect_tol + 1e-3

    @pytest.mark.parametrize("n", [2, 3, 8, 16])
    def test_verdict_monotonicity(self, n):
        exact = locking_threshold_exact(FrequencySpec(Rule.MIDPOINT, n)).gamma_l
        gammas = [0.6 * exact, 0.8 * exact, 0.95 * exact, 1.1 * exact, 1.4 * exact]
        verdicts = [integrate(FrequencySpec(Rule.MIDPOINT, n, g), CFG).verdict
                    for g in gammas]
        locked_flags = [v is Verdict.LOCKED for v in verdicts]
        # once unlocked, never locked again at larger gamma
        assert locked_flags == sorted(locked_flags, reverse=True)
        assert locked_flags[0] and not locked_flags[-1]
