"""Tests for the Gaussian bounds: closed forms vs numeric oracles, branch
seams, asymptotics, the DPC covariance oracle and the gap analysis."""

import math

import numpy as np
import pytest

from dirtycast.core import GaussianCov, gaussian_mi
from dirtycast.gaussian import (
    GaussianChannelSpec,
    PowerSplit,
    awgn_capacity,
    dpc_scheme_oracle,
    feedback_bounds,
    gap,
    high_sinr_asymptote,
    lower_bound,
    maximize_power_split,
    minimize_upper_i_rho,
    minimize_upper_ii_rho,
    rate_interference_as_noise,
    rate_of_split,
    rate_timeshare,
    universal_gap,
    upper_envelope,
    upper_i,
    upper_i_at_rho,
    upper_ii,
    upper_ii_at_rho,
    upper_k,
    upper_k_raw,
    z_sum_difference_cov,
)

P_GRID = tuple(float(p) for p in np.logspace(math.log10(0.1), 4.0, 20))
Q_GRID_LINEAR = tuple(float(q) for q in np.linspace(0.0, 1.0e4, 21))
Q_GRID_LOG = (0.0,) + tuple(float(q) for q in np.logspace(-2.0, 4.0, 20))


class TestBaselines:
    def test_timeshare(self):
        assert rate_timeshare(0.0).value == 0.0
        assert rate_timeshare(3.0).value == pytest.approx(0.5, abs=1e-15)
        assert rate_timeshare(1995.2623149688789).value == pytest.approx(
            2.740771398082755, abs=1e-12
        )

    def test_interference_as_noise(self):
        assert rate_interference_as_noise(7.0, 0.0).value == pytest.approx(
            awgn_capacity(7.0), abs=1e-15
        )
        assert rate_interference_as_noise(0.0, 5.0).value == 0.0
        assert rate_interference_as_noise(10.0, 4.0).value == pytest.approx(
            0.5 * math.log2(3.0), abs=1e-12
        )


class TestUpperBounds:
    def test_vanishing_interference(self):
        for p in (0.2, 1.0, 50.0):
            assert upper_i(p, 0.0).value == pytest.approx(awgn_capacity(p), abs=1e-12)
            assert upper_ii(p, 0.0).value == pytest.approx(awgn_capacity(p), abs=1e-12)

    def test_upper_i_frozen_point(self):
        # log2(11)/4 + log2((19+2*sqrt(80))/8)/4, rho pinned at 1
        expect = 0.25 * math.log2(11.0) + 0.25 * math.log2((19.0 + 2.0 * math.sqrt(80.0)) / 8.0)
        assert upper_i(10.0, 8.0).value == pytest.approx(expect, abs=1e-12)
        assert upper_i(10.0, 8.0).value == pytest.approx(1.416133138277382, abs=1e-12)
        _, minimized = minimize_upper_i_rho(10.0, 8.0)
        assert minimized == pytest.approx(upper_i(10.0, 8.0).value, abs=1e-6)

    def test_upper_ii_frozen_point(self):
        expect = 0.5 * math.log2((111.0 + 2.0 * math.sqrt(1000.0)) / math.sqrt(200.0)) - 0.25 * math.log2(100.0 / 22.0)
        assert upper_ii(10.0, 100.0).value == pytest.approx(expect, abs=1e-12)
        assert upper_ii(10.0, 100.0).value == pytest.approx(1.265418823944883, abs=1e-12)
        _, minimized = minimize_upper_ii_rho(10.0, 100.0)
        assert minimized == pytest.approx(upper_ii(10.0, 100.0).value, abs=1e-6)

    def test_branch_seams(self):
        for p in (0.3, 2.0, 40.0, 1995.26):
            big4 = p + 5.0 + 2.0 * math.sqrt(4.0 * p)
            low = 0.25 * math.log2((1 + p) / 2.0) + 0.25 * math.log2(big4 / 2.0)
            high = 0.25 * math.log2(1 + p) + 0.25 * math.log2(big4 / 4.0)
            assert low == pytest.approx(high, abs=1e-9)
            assert upper_i(p, 4.0).value == pytest.approx(high, abs=1e-12)

            big2 = p + 3.0 + 2.0 * math.sqrt(2.0 * p)
            assert upper_ii(p, 2.0).value == pytest.approx(0.5 * math.log2(big2 / 2.0), abs=1e-12)
            # the [.]^+ term vanishes at the seam since Q=2 <= 2P+2
            seam_gap = max(0.0, 0.25 * math.log2(2.0 / (2.0 * p + 2.0)))
            assert seam_gap == 0.0

    def test_closed_forms_match_rho_minimization_on_grid(self):
        for p in P_GRID:
            for q in Q_GRID_LINEAR:
                _, val_i = minimize_upper_i_rho(p, q)
                assert abs(val_i - upper_i(p, q).value) < 1e-5
                _, val_ii = minimize_upper_ii_rho(p, q)
                assert abs(val_ii - upper_ii(p, q).value) < 1e-5

    def test_closed_upper_ii_never_below_its_minimum(self):
        for p in P_GRID:
            for q in Q_GRID_LOG:
                _, val = minimize_upper_ii_rho(p, q)
                assert upper_ii(p, q).value >= val - 1e-9

    def test_envelope(self):
        assert upper_envelope(4.0, 0.0).value == pytest.approx(awgn_capacity(4.0), abs=1e-12)
        p33, q15 = 1995.2623149688789, 31.622776601683793
        env = upper_envelope(p33, q15).value
        assert env == pytest.approx(
            min(upper_i(p33, q15).value, upper_ii(p33, q15).value, awgn_capacity(p33)), abs=0
        )
        assert env == pytest.approx(4.156812603877782, abs=1e-12)
        # small P: the trivial AWGN bound is the binding one
        assert upper_envelope(0.1, 2.0).value == pytest.approx(awgn_capacity(0.1), abs=1e-12)

    def test_high_interference_limit(self):
        for p in (1.0, 10.0):
            assert abs(upper_envelope(p, 1.0e8).value - rate_timeshare(p).value) <= 1e-3
        # convergence is O(sqrt(P/Q)): at P = 33 dB the residual at Q=1e8 is ~3.2e-3
        dev = upper_envelope(1995.2623149688789, 1.0e8).value - 2.740771398082755
        assert dev == pytest.approx(3.2e-3, abs=4e-4)
        for p in (1.0, 10.0, 1995.2623149688789):
            assert abs(upper_envelope(p, 1.0e12).value - rate_timeshare(p).value) <= 1e-4

    def test_domain(self):
        with pytest.raises(ValueError):
            upper_i(-1.0, 1.0)
        with pytest.raises(ValueError):
            upper_ii(1.0, -1.0)


class TestLowerBound:
    def test_branch_values(self):
        assert lower_bound(5.0, 0.0).value == pytest.approx(awgn_capacity(5.0), abs=1e-15)
        # Q/2 >= P+1: pure time-sharing
        assert lower_bound(3.0, 10.0).value == pytest.approx(0.25 * math.log2(4.0), abs=1e-15)
        # middle branch at P=10, Q=4: log2(13/4)/2 + log2(2)/4
        expect = 0.5 * math.log2(13.0 / 4.0) + 0.25
        assert lower_bound(10.0, 4.0).value == pytest.approx(expect, abs=1e-12)
        assert lower_bound(10.0, 4.0).value == pytest.approx(1.100219859070546, abs=1e-12)

    def test_branch_seams(self):
        for p in (0.5, 4.0, 321.0):
            dpc_arm = 0.5 * math.log2(1.0 + p / 2.0)
            mixed_arm = 0.5 * math.log2((p + 2.0) / 2.0) + 0.25 * math.log2(1.0)
            assert dpc_arm == pytest.approx(mixed_arm, abs=1e-9)
            q = 2.0 * (p + 1.0)
            mixed = 0.5 * math.log2((p + q / 2.0 + 1.0) / q) + 0.25 * math.log2(q / 2.0)
            assert mixed == pytest.approx(0.25 * math.log2(1.0 + p), abs=1e-9)

    def test_rate_of_split_examples(self):
        assert rate_of_split(PowerSplit(6.0, 0.0), 4.0) == pytest.approx(
            0.5 * math.log2(1.0 + 6.0 / 3.0), abs=1e-12
        )
        assert rate_of_split(PowerSplit(0.0, 6.0), 4.0) == pytest.approx(
            0.25 * math.log2(7.0), abs=1e-12
        )
        assert rate_of_split(PowerSplit(4.0, 2.0), 2.0) == pytest.approx(
            0.896240625180289, abs=1e-12
        )

    def test_closed_form_matches_grid_search(self):
        for p in (0.1, 1.0, 12.0, 263.7, 1.0e4):
            for q in (0.0, 0.5, 2.0, 4.0, 31.6, 500.0, 1.0e4):
                _, numeric = maximize_power_split(p, q)
                assert abs(lower_bound(p, q).value - numeric) < 1e-6

    def test_ordering_against_baselines_and_uppers(self):
        for q_grid in (Q_GRID_LINEAR, Q_GRID_LOG):
            for p in P_GRID:
                for q in q_grid:
                    base = max(
                        rate_timeshare(p).value, rate_interference_as_noise(p, q).value
                    )
                    lo = lower_bound(p, q).value
                    assert base <= lo + 1e-12
                    assert lo <= upper_envelope(p, q).value + 1e-9


class TestDpcOracle:
    def test_frozen_point(self):
        r_a, r_d = dpc_scheme_oracle(PowerSplit(4.0, 2.0), 2.0)
        assert r_a == pytest.approx(0.5, abs=1e-9)
        assert r_d == pytest.approx(0.5 * math.log2(3.0), abs=1e-9)

    def test_degenerate_splits(self):
        r_a, r_d = dpc_scheme_oracle(PowerSplit(0.0, 2.0), 2.0)
        assert r_a == 0.0
        assert r_d == pytest.approx(0.5 * math.log2(3.0), abs=1e-9)
        r_a, r_d = dpc_scheme_oracle(PowerSplit(4.0, 0.0), 2.0)
        assert r_a == pytest.approx(0.5 * math.log2(3.0), abs=1e-9)
        assert r_d == 0.0

    def test_random_triples_match_closed_forms(self):
        rng = np.random.default_rng(12345)
        for _ in range(100):
            p_a, p_d, q = (float(10.0 ** rng.uniform(-2, 3)) for _ in range(3))
            r_a, r_d = dpc_scheme_oracle(PowerSplit(p_a, p_d), q)
            assert r_a == pytest.approx(
                0.5 * math.log2(1.0 + p_a / (p_d + q / 2.0 + 1.0)), abs=1e-9
            )
            assert r_d == pytest.approx(0.5 * math.log2(1.0 + p_d), abs=1e-9)

    def test_scheme_rate_is_achieved_at_the_optimal_split(self):
        p, q = 10.0, 4.0
        split, _ = maximize_power_split(p, q)
        r_a, r_d = dpc_scheme_oracle(split, q)
        assert r_a + 0.5 * r_d == pytest.approx(lower_bound(p, q).value, abs=1e-5)

    def test_noise_rotation_exact(self):
        for rho in np.linspace(-1.0, 1.0, 21):
            rho = float(rho)
            m = z_sum_difference_cov(rho)
            assert m[0, 0] == 1.0 + rho
            assert m[1, 1] == 1.0 - rho
            assert m[0, 1] == 0.0 and m[1, 0] == 0.0

    def test_rate_distortion_floor(self):
        rng = np.random.default_rng(99)
        for _ in range(200):
            q = float(10.0 ** rng.uniform(-1, 3))
            p = float(10.0 ** rng.uniform(-1, 3))
            rho = float(rng.uniform(-1.0, 1.0))
            c = float(rng.uniform(-1.0, 1.0)) * math.sqrt(p / q)
            w_var = float(rng.uniform(0.0, 1.0)) * (p - c * c * q)
            cov = GaussianCov.from_factors(
                np.array([[1.0, 0.0, 0.0], [math.sqrt(2.0) * c + 1.0, math.sqrt(2.0), 1.0]]),
                [q, w_var, 1.0 + rho],
            )
            floor = max(0.0, 0.5 * math.log2(q / (2.0 * p + 1.0 + rho)))
            assert gaussian_mi(cov, [0], [1]) >= floor - 1e-9


class TestKUserBound:
    def test_k2_reduces_to_rho1_bound(self):
        for p in (0.5, 10.0, 1995.26):
            for q in (3.0, 31.6, 4000.0):
                assert upper_k_raw(p, q, 2) == pytest.approx(
                    upper_ii_at_rho(p, q, 1.0), abs=1e-9
                )

    def test_direct_point_against_rederivation(self):
        # regroup the converse: R <= log2(big)/2 - (1/K)[(K-1)/2 log2 Q
        #   + log2(K)/2 + [log2(Q/(K(P+1)))/2]^+]
        p, q, k = 10.0, 100.0, 3
        big = p + q + 1.0 + 2.0 * math.sqrt(p * q)
        inner = (
            (k - 1) / 2.0 * math.log2(q)
            + 0.5 * math.log2(k)
            + max(0.0, 0.5 * math.log2(q / (k * (p + 1.0))))
        )
        assert upper_k_raw(p, q, k) == pytest.approx(
            0.5 * math.log2(big) - inner / k, abs=1e-12
        )

    def test_high_interference_limit_is_timesharing(self):
        for p in (1.0, 10.0, 100.0):
            for k in (2, 3, 4, 8):
                ts = awgn_capacity(p) / k
                assert abs(upper_k(p, 1.0e10, k).value - ts) <= 1e-3

    def test_small_q_cap(self):
        assert upper_k(10.0, 0.0, 3).value == awgn_capacity(10.0)
        assert upper_k(10.0, 1e-9, 5).value == awgn_capacity(10.0)
        assert upper_k_raw(10.0, 0.0, 3) == math.inf

    def test_domain(self):
        with pytest.raises(ValueError):
            upper_k(1.0, 1.0, 1)


class TestGapAnalysis:
    def test_universal_constant(self):
        assert universal_gap() == pytest.approx(0.7715533031636119, abs=1e-15)
        assert abs(universal_gap() - 0.77163) <= 1e-4

    def test_gap_vanishes_without_interference(self):
        for p in (0.3, 5.0, 800.0):
            assert gap(p, 0.0) == pytest.approx(0.0, abs=1e-12)

    def test_regional_maximum_low_q(self):
        p_star = (9.0 - math.sqrt(17.0)) / 4.0
        regional = 0.5 * math.log2((5.0 + math.sqrt(17.0)) / 4.0)
        assert gap(p_star, 2.0) == pytest.approx(regional, abs=1e-12)
        assert abs(regional - 0.59479) <= 1e-3
        sweep = max(
            gap(float(p), float(q))
            for p in np.linspace(0.01, 10.0, 150)
            for q in np.linspace(0.0, 2.0, 101)
        )
        assert sweep <= regional + 1e-9

    def test_grid_supremum_approaches_constant_from_below(self):
        sup = max(gap(p, q) for p in P_GRID for q in Q_GRID_LINEAR)
        assert 0.74 <= sup <= universal_gap() + 1e-9
        # along Q = 2(P+1) the gap climbs toward the universal constant
        ridge = [gap(p, 2.0 * (p + 1.0)) for p in (1e2, 1e4, 1e6, 1e8)]
        assert all(ridge[i] < ridge[i + 1] for i in range(len(ridge) - 1))
        assert universal_gap() - ridge[-1] < 1e-4

    def test_gap_closes_at_high_snr(self):
        for q in (1.0, 8.0, 100.0):
            assert gap(1.0e8, q) <= 0.002


class TestAsymptotesAndFeedback:
    def test_branch_agreement_at_q2(self):
        for p in (10.0, 1.0e6):
            assert high_sinr_asymptote(p, 2.0) == pytest.approx(
                0.5 * math.log2(p / 2.0), abs=1e-12
            )

    def test_convergence_to_lower_bound(self):
        assert high_sinr_asymptote(1.0e6, 8.0) == pytest.approx(8.965784284662087, abs=1e-12)
        assert abs(lower_bound(1.0e6, 8.0).value - high_sinr_asymptote(1.0e6, 8.0)) <= 0.01
        assert abs(lower_bound(1.0e6, 1.0).value - high_sinr_asymptote(1.0e6, 1.0)) <= 0.01

    def test_feedback_at_optimal_rho_matches_closed_forms(self):
        for p, q in ((10.0, 1.0), (3.0, 8.0), (100.0, 3.0)):
            rho_i = q / 4.0 if q <= 4.0 else 1.0
            rho_ii = q / 2.0 if q <= 2.0 else 1.0
            fb_i, _ = feedback_bounds(p, q, rho_i)
            _, fb_ii = feedback_bounds(p, q, rho_ii)
            assert fb_i.value == pytest.approx(upper_i(p, q).value, abs=1e-12)
            assert fb_ii.value == pytest.approx(upper_ii(p, q).value, abs=1e-12)

    def test_feedback_frozen_point(self):
        _, fb_ii = feedback_bounds(10.0, 1.0, 0.0)
        expect = 0.5 * math.log2((12.0 + 2.0 * math.sqrt(10.0)) / math.sqrt(2.0))
        assert fb_ii.value == pytest.approx(expect, abs=1e-12)
        assert fb_ii.value == pytest.approx(1.847853141986692, abs=1e-12)

    def test_feedback_never_beats_optimized_bound(self):
        for rho in np.linspace(-0.99, 1.0, 9):
            fb_i, fb_ii = feedback_bounds(10.0, 5.0, float(rho))
            assert fb_i.value >= upper_i(10.0, 5.0).value - 1e-12
            assert fb_ii.value >= upper_ii(10.0, 5.0).value - 1e-12


class TestSpecType:
    def test_validation(self):
        GaussianChannelSpec(1.0, 2.0, k=3, rho=0.5)
        with pytest.raises(ValueError):
            GaussianChannelSpec(-1.0, 2.0)
        with pytest.raises(ValueError):
            GaussianChannelSpec(1.0, 2.0, k=1)
        with pytest.raises(ValueError):
            GaussianChannelSpec(1.0, 2.0, rho=1.5)

    def test_at_rho_guards(self):
        assert upper_i_at_rho(1.0, 0.0, 1.0) == math.inf
        assert upper_ii_at_rho(1.0, 1.0, -1.0) == math.inf
