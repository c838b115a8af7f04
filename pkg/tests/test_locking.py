import math

import numpy as np
import pytest

from locklab import specfun
from locklab.locking import (
    FrequencySpec,
    Rule,
    lock_margin,
    locking_threshold_exact,
    make_frequencies,
    normalized,
    order_param_at_threshold,
    scale_factor,
    solve_sin_theta_max,
)

# N=3 closed form: the implicit equation reduces to 4c^2 + c - 2 = 0
# with c = cos(theta_max) = sqrt(1 - s^2).
C3 = (-1.0 + math.sqrt(33.0)) / 8.0
S3 = math.sqrt(1.0 - C3**2)


def spec(rule, n, gamma=1.0, **kw):
    return FrequencySpec(rule, n, gamma, **kw)


class TestMakeFrequencies:
    def test_midpoint_n2(self):
        assert make_frequencies(spec(Rule.MIDPOINT, 2)).tolist() == [-0.5, 0.5]

    def test_endpoint_n3(self):
        assert make_frequencies(spec(Rule.ENDPOINT, 3)).tolist() == [-1.0, 0.0, 1.0]

    @pytest.mark.parametrize("rule", [Rule.MIDPOINT, Rule.ENDPOINT])
    @pytest.mark.parametrize("n", [2, 3, 8, 17])
    def test_antisymmetric_and_increasing(self, rule, n):
        w = make_frequencies(spec(rule, n, gamma=0.7))
        assert np.array_equal(w, -w[::-1])
        assert np.all(np.diff(w) > 0)

    def test_max_frequency(self):
        g = 1.3
        assert make_frequencies(spec(Rule.MIDPOINT, 10, g))[-1] == pytest.approx(g * 0.9, rel=1e-15)
        assert make_frequencies(spec(Rule.ENDPOINT, 10, g))[-1] == pytest.approx(g, rel=1e-15)

    def test_sigma_beta_transcription(self):
        # direct transcription of the family's defining display
        n, g, sigma, beta = 4, 1.0, 1.0, 1.0
        w = make_frequencies(spec(Rule.SIGMA_BETA, n, g, sigma=sigma, beta=beta))
        coef = g * (1.0 - beta / n**sigma) * (1.0 - 1.0 / n)
        expected = [coef * 2.0 * (j - 1) / (n - 1) for j in range(1, n + 1)]
        np.testing.assert_allclose(w, expected, rtol=1e-15)

    def test_zeta_corrected_transcription(self):
        n = 7
        zneg = specfun.qrs_c1().zeta_neg_half_at_c1
        coef = 1.0 - 1.0 / n + (16.0 / math.pi) * zneg * n**-1.5
        w = make_frequencies(spec(Rule.ZETA_CORRECTED, n))
        expected = [coef * 2.0 * (j - 1) / (n - 1) for j in range(1, n + 1)]
        np.testing.assert_allclose(w, expected, rtol=1e-15)

    def test_rejections(self):
        with pytest.raises(ValueError):
            FrequencySpec(Rule.MIDPOINT, 1)
        with pytest.raises(ValueError):
            FrequencySpec(Rule.MIDPOINT, 4, -1.0)
        with pytest.raises(ValueError):
            FrequencySpec(Rule.SIGMA_BETA, 4, sigma=1.6, beta=1.0)
        with pytest.raises(ValueError):
            FrequencySpec(Rule.SIGMA_BETA, 4, sigma=1.0, beta=0.0)
        with pytest.raises(ValueError):
            FrequencySpec(Rule.SIGMA_BETA, 4, sigma=1.0)


class TestNormalized:
    def test_n2(self):
        assert normalized(spec(Rule.MIDPOINT, 2)).tolist() == [-1.0, 1.0]

    def test_midpoint_n5(self):
        assert normalized(spec(Rule.MIDPOINT, 5)).tolist() == [-1.0, -0.5, 0.0, 0.5, 1.0]

    def test_endpoint_matches_midpoint(self):
        for n in (5, 12):
            a = normalized(spec(Rule.ENDPOINT, n))
            b = normalized(spec(Rule.MIDPOINT, n))
            assert np.array_equal(a, b)

    def test_consistent_with_centered_frequencies(self):
        s = spec(Rule.SIGMA_BETA, 9, sigma=0.5, beta=-2.0)
        w = make_frequencies(s)
        centered = w - w.mean()
        np.testing.assert_allclose(normalized(s), centered / centered[-1], atol=1e-14)


class TestLockMargin:
    def test_value_at_zero(self):
        for n in (2, 5, 11):
            assert lock_margin(normalized(spec(Rule.MIDPOINT, n)), 0.0) == 1.0

    def test_two_oscillator_root(self):
        assert lock_margin(np.array([-1.0, 1.0]), 1.0 / math.sqrt(2.0)) == pytest.approx(0.0, abs=1e-15)

    def test_three_oscillator_root(self):
        assert lock_margin(np.array([-1.0, 0.0, 1.0]), S3) == pytest.approx(0.0, abs=1e-14)
        # closed form gives 0.8051507; quoted decimals are a loose check
        assert S3 == pytest.approx(0.80516, abs=1e-4)

    def test_monotone_decreasing_grid(self):
        nu = normalized(spec(Rule.MIDPOINT, 9))
        grid = np.linspace(0.0, 1.0 - 1e-6, 1000)
        vals = [lock_margin(nu, s) for s in grid]
        assert all(a > b for a, b in zip(vals, vals[1:]))

    def test_reversal_symmetry(self):
        nu = normalized(spec(Rule.MIDPOINT, 8))
        for s in (0.1, 0.5, 0.9):
            assert lock_margin(nu, s) == lock_margin(-nu[::-1], s)

    def test_rejects_s_out_of_range(self):
        nu = normalized(spec(Rule.MIDPOINT, 4))
        with pytest.raises(ValueError):
            lock_margin(nu, 1.0)
        with pytest.raises(ValueError):
            lock_margin(nu, -0.1)


class TestSolve:
    def test_n2(self):
        s = solve_sin_theta_max(np.array([-1.0, 1.0]))
        assert s == pytest.approx(1.0 / math.sqrt(2.0), rel=1e-13)

    def test_n3(self):
        s = solve_sin_theta_max(np.array([-1.0, 0.0, 1.0]))
        assert s == pytest.approx(S3, rel=1e-13)

    def test_large_n_bailey_trend(self):
        qrs = specfun.qrs_c1()
        for n in (10**3, 10**4, 10**5):
            s = solve_sin_theta_max(normalized(spec(Rule.MIDPOINT, n)))
            model = qrs.c1 / n + qrs.c2 / n**2
            assert (1.0 - s) == pytest.approx(model, rel=1e-3)

    def test_requires_extremal_entry(self):
        with pytest.raises(ValueError):
            solve_sin_theta_max(np.array([-0.5, 0.0, 0.5]))

    def test_scale_invariance_bit_identical(self):
        # s* depends only on nu; rescaling gamma leaves nu (hence s*) unchanged
        s1 = solve_sin_theta_max(normalized(spec(Rule.MIDPOINT, 37, gamma=1.0)))
        s2 = solve_sin_theta_max(normalized(spec(Rule.MIDPOINT, 37, gamma=17.3)))
        assert s1 == s2


class TestOrderParam:
    def test_n2(self):
        r = order_param_at_threshold(np.array([-1.0, 1.0]), 1.0 / math.sqrt(2.0))
        assert r == pytest.approx(math.sqrt(2.0) / 2.0, rel=1e-14)

    def test_n3(self):
        r = order_param_at_threshold(np.array([-1.0, 0.0, 1.0]), S3)
        assert r == pytest.approx((2.0 / C3 + 1.0) / 6.0, rel=1e-13)
        assert r == pytest.approx(0.728712, abs=5e-6)

    def test_both_expressions_coincide_at_root(self):
        # r = (1/2)<1/sqrt(.)> equals <sqrt(.)> exactly when G(s*) = 0
        for n in (4, 25, 400):
            nu = normalized(spec(Rule.MIDPOINT, n))
            s = solve_sin_theta_max(nu)
            r = order_param_at_threshold(nu, s)
            mean_sq = float(np.mean(np.sqrt(1.0 - nu**2 * s**2)))
            assert abs(r - mean_sq) <= 1e-12

    def test_saddle_node_condition_at_root(self):
        # 2<cos theta_j> = <1/cos theta_j> with theta_j = arcsin(nu_j s*)
        for n in (3, 10, 101):
            nu = normalized(spec(Rule.MIDPOINT, n))
            s = solve_sin_theta_max(nu)
            cos_t = np.cos(np.arcsin(nu * s))
            assert 2.0 * np.mean(cos_t) == pytest.approx(float(np.mean(1.0 / cos_t)), abs=1e-12)


class TestThreshold:
    def test_midpoint_n2_exact(self):
        assert locking_threshold_exact(spec(Rule.MIDPOINT, 2)).gamma_l == pytest.approx(1.0, abs=1e-13)

    def test_endpoint_n2_exact(self):
        assert locking_threshold_exact(spec(Rule.ENDPOINT, 2)).gamma_l == pytest.approx(0.5, abs=1e-13)

    def test_midpoint_n3_closed_form(self):
        expected = S3 * (2.0 / C3 + 1.0) / 6.0 / (2.0 / 3.0)
        sol = locking_threshold_exact(spec(Rule.MIDPOINT, 3))
        assert sol.gamma_l == pytest.approx(expected, abs=1e-12)
        assert sol.gamma_l == pytest.approx(0.880089, abs=5e-6)

    def test_infinite_n_limit(self):
        gl = [locking_threshold_exact(spec(Rule.MIDPOINT, n)).gamma_l for n in (10**2, 10**4, 10**6)]
        gaps = [abs(g - math.pi / 4.0) for g in gl]
        assert gaps[0] > gaps[1] > gaps[2]
        assert gaps[2] < 1e-8

    def test_solution_invariants(self):
        for rule, n in [(Rule.MIDPOINT, 17), (Rule.ENDPOINT, 64), (Rule.ZETA_CORRECTED, 33)]:
            sol = locking_threshold_exact(spec(rule, n))
            assert 0.0 < sol.sin_theta_max < 1.0
            assert 0.0 < sol.r <= 1.0
            assert sol.omega_max == pytest.approx(sol.r * sol.sin_theta_max, rel=1e-15)
            assert abs(sol.residual) <= 1e-13

    @pytest.mark.parametrize("n", [2, 3, 10, 100, 10**4])
    def test_endpoint_midpoint_coupling(self, n):
        gm = locking_threshold_exact(spec(Rule.MIDPOINT, n)).gamma_l
        ge = locking_threshold_exact(spec(Rule.ENDPOINT, n)).gamma_l
        assert ge == pytest.approx((1.0 - 1.0 / n) * gm, rel=1e-13)

    def test_n32_prefactor_convergence(self):
        qrs = specfun.qrs_c1()
        vals = []
        for n in (10**3, 10**4, 10**5):
            gl = locking_threshold_exact(spec(Rule.MIDPOINT, n)).gamma_l
            vals.append((gl - math.pi / 4.0) * n**1.5)
        errs = [abs(v - qrs.prefactor) for v in vals]
        assert errs[0] > errs[1] > errs[2]
        assert errs[2] < 1e-3

    def test_scale_factor_values(self):
        assert scale_factor(spec(Rule.MIDPOINT, 4)) == 0.75
        assert scale_factor(spec(Rule.ENDPOINT, 4)) == 1.0
        sb = spec(Rule.SIGMA_BETA, 4, sigma=1.0, beta=1.0)
        assert scale_factor(sb) == pytest.approx(0.75 * 0.75, rel=1e-15)
