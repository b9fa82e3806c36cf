# -----------------------------------------------------------------------------.
# MIT License

# Copyright (c) 2026 itsalab developers
#
# This file is part of itsalab.

# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in all
# copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.

# -----------------------------------------------------------------------------.
"""Test the OLS fit with Newey-West standard errors."""
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from pydantic import ValidationError

from itsalab.errors import BandwidthTooLargeError, RankDeficientError
from itsalab.estimation.olsnw import (
    HacConfig,
    bartlett_weight,
    bartlett_weights,
    fit_ols_nw,
    nw_bandwidth,
    nw_cov,
    ols_cov,
    ols_fit,
)
from itsalab.model.design import build_design
from itsalab.model.results import OLS_NW
from itsalab.model.wald import wald_test
from itsalab.tests.conftest import make_random_panel


def _nw_oracle(X, e, L, segments):
    """Newey-West covariance computed pair by pair."""
    n, p = X.shape
    S = np.zeros((p, p))
    for t in range(n):
        S += e[t] ** 2 * np.outer(X[t], X[t])
    for j in range(1, L + 1):
        weight = 1 - j / (L + 1)
        for t in range(j, n):
            if segments[t] == segments[t - j]:
                gamma = e[t] * e[t - j] * np.outer(X[t], X[t - j])
                S += weight * (gamma + gamma.T)
    S /= n
    bread = np.linalg.inv(X.T @ X)
    return bread @ (n * S) @ bread * n / (n - p)


class TestBandwidth:
    @pytest.mark.parametrize("T,expected", [(10, 2), (20, 2), (50, 3), (100, 4), (200, 4), (360, 5)])
    def test_automatic_rule(self, T, expected):
        assert nw_bandwidth(T) == expected

    def test_too_short(self):
        with pytest.raises(ValueError):
            nw_bandwidth(1)

    def test_bartlett_weight(self):
        assert bartlett_weight(1, 4) == pytest.approx(0.8)
        assert bartlett_weight(4, 4) == pytest.approx(0.2)

    @given(L=st.integers(min_value=1, max_value=60))
    def test_bartlett_weights_vector(self, L):
        weights = bartlett_weights(L)
        assert weights.shape == (L,)
        assert np.all(np.diff(weights) < 0)
        assert np.all((weights > 0) & (weights < 1))
        np.testing.assert_allclose(weights, [bartlett_weight(j, L) for j in range(1, L + 1)])

    @given(T=st.integers(min_value=2, max_value=5000))
    def test_bandwidth_nondecreasing(self, T):
        assert 0 <= nw_bandwidth(T) <= nw_bandwidth(T + 1)

    @pytest.mark.parametrize("j", [0, 5])
    def test_bartlett_invalid_lag(self, j):
        with pytest.raises(ValueError):
            bartlett_weight(j, 4)

    def test_invalid_config(self):
        with pytest.raises(ValidationError):
            HacConfig(lag=-1)
        with pytest.raises(ValidationError):
            HacConfig(prewhitening=True)


class TestOLS:
    def test_rank_deficient(self):
        X = np.column_stack([np.ones(10), np.ones(10)])
        with pytest.raises(RankDeficientError):
            ols_fit(X, np.arange(10.0))

    def test_exact_line(self):
        X = np.column_stack([np.ones(5), np.arange(5.0)])
        beta, residuals = ols_fit(X, 2 + 3 * np.arange(5.0))
        np.testing.assert_allclose(beta, [2, 3], atol=1e-12)
        np.testing.assert_allclose(residuals, 0, atol=1e-12)


class TestNeweyWest:
    def test_lag_zero_is_white(self):
        rng = np.random.default_rng(0)
        X = np.column_stack([np.ones(30), rng.standard_normal((30, 2))])
        e = rng.standard_normal(30)
        bread = np.linalg.inv(X.T @ X)
        expected = bread @ (X.T * e**2) @ X @ bread * 30 / 27
        np.testing.assert_allclose(nw_cov(X, e, 0), expected, rtol=1e-10)

    def test_without_small_sample_adjustment(self):
        rng = np.random.default_rng(1)
        X = np.column_stack([np.ones(20), rng.standard_normal(20)])
        e = rng.standard_normal(20)
        adjusted = nw_cov(X, e, 2)
        np.testing.assert_allclose(nw_cov(X, e, 2, small_sample_adjust=False) * 20 / 18, adjusted, rtol=1e-12)

    def test_matches_pairwise_sums(self):
        rng = np.random.default_rng(2026)
        for _ in range(100):
            n_units = int(rng.integers(2, 5))
            T = int(rng.integers(6, 15))
            L = int(rng.integers(0, 5))
            segments = np.repeat(np.arange(n_units), T)
            X = np.column_stack([np.ones(n_units * T), rng.standard_normal((n_units * T, 3))])
            e = rng.standard_normal(n_units * T)
            np.testing.assert_allclose(nw_cov(X, e, L, segments), _nw_oracle(X, e, L, segments), rtol=1e-10, atol=1e-12)

    def test_no_cross_segment_terms(self):
        """Products of rows from different units never enter the long-run covariance."""
        rng = np.random.default_rng(3)
        segments = np.repeat([0, 1], 10)
        X = np.column_stack([np.ones(20), rng.standard_normal(20)])
        e = rng.standard_normal(20)
        single = nw_cov(X, e, 3)
        segmented = nw_cov(X, e, 3, segments)
        assert not np.allclose(single, segmented)
        np.testing.assert_allclose(segmented, _nw_oracle(X, e, 3, segments), rtol=1e-10)

    def test_segment_order_invariance(self):
        rng = np.random.default_rng(4)
        segments = np.repeat([0, 1, 2], 8)
        X = np.column_stack([np.ones(24), rng.standard_normal((24, 2))])
        e = rng.standard_normal(24)
        order = np.concatenate([np.arange(16, 24), np.arange(0, 8), np.arange(8, 16)])
        np.testing.assert_allclose(
            nw_cov(X[order], e[order], 3, segments[order]),
            nw_cov(X, e, 3, segments),
            rtol=1e-10,
        )

    def test_long_run_covariance_positive_semidefinite(self):
        """The Bartlett-weighted long-run score covariance has no negative eigenvalue."""
        rng = np.random.default_rng(2026)
        for _ in range(50):
            n_units = int(rng.integers(1, 4))
            T = int(rng.integers(10, 30))
            L = int(rng.integers(0, T))
            n = n_units * T
            segments = np.repeat(np.arange(n_units), T)
            X = np.column_stack([np.ones(n), rng.standard_normal((n, 3))])
            residuals = rng.standard_normal(n) * np.cumsum(rng.standard_normal(n))
            cov = nw_cov(X, residuals, L, segments=segments, small_sample_adjust=False)
            long_run = X.T @ X @ cov @ X.T @ X / n
            long_run = (long_run + long_run.T) / 2
            assert np.linalg.eigvalsh(long_run).min() >= -1e-10 * np.trace(long_run)

    def test_bandwidth_too_large(self):
        segments = np.repeat([0, 1], [5, 8])
        X = np.column_stack([np.ones(13), np.arange(13.0)])
        with pytest.raises(BandwidthTooLargeError) as excinfo:
            nw_cov(X, np.ones(13), 5, segments)
        assert "shortest segment (5)" in str(excinfo.value)

    def test_negative_bandwidth(self):
        with pytest.raises(ValueError):
            nw_cov(np.ones((5, 1)), np.ones(5), -1)


class TestFitOlsNw:
    def test_noise_free_recovery(self, noise_free_scenario, noise_free_panel):
        fit = fit_ols_nw(noise_free_panel)
        np.testing.assert_allclose(fit.beta, noise_free_scenario.resolve_betas(), atol=1e-8)
        assert fit.method == OLS_NW
        assert fit.rho_hat is None

    def test_automatic_lag_and_df(self, noise_free_panel):
        fit = fit_ols_nw(noise_free_panel)
        assert fit.lag_used == 2
        assert fit.n_obs == 100
        assert fit.df == 92

    def test_fixed_lag(self, ar1_panel):
        fit = fit_ols_nw(ar1_panel, hac={"lag": 7})
        assert fit.lag_used == 7
        assert np.all(fit.se > 0)

    def test_lag_not_smaller_than_series(self, noise_free_panel):
        with pytest.raises(BandwidthTooLargeError):
            fit_ols_nw(noise_free_panel, hac=HacConfig(lag=20))

    def test_explicit_intervention(self, ar1_panel):
        """An explicit intervention time overrides the post column."""
        default = fit_ols_nw(ar1_panel)
        shifted = fit_ols_nw(ar1_panel, intervention=80)
        assert not np.allclose(default.beta, shifted.beta)

    def test_white_covariance_at_lag_zero(self):
        panel = make_random_panel(np.random.default_rng(5), n_periods=12, n_units=3)
        fit = fit_ols_nw(panel, hac={"lag": 0, "small_sample_adjust": False})
        design = build_design(panel, 7)
        residuals = panel["y"].to_numpy() - design.rows @ fit.beta
        bread = np.linalg.inv(design.rows.T @ design.rows)
        white = bread @ (design.rows.T * residuals**2) @ design.rows @ bread
        np.testing.assert_allclose(fit.cov, white, rtol=1e-8, atol=1e-12)
        assert ols_cov(design.rows, residuals).shape == (8, 8)

    def test_outcome_shift_moves_intercept_only(self, ar1_panel):
        fit = fit_ols_nw(ar1_panel)
        shifted = fit_ols_nw(ar1_panel.assign(y=ar1_panel["y"] + 5.0))
        assert shifted.beta[0] - fit.beta[0] == pytest.approx(5.0, abs=1e-8)
        np.testing.assert_allclose(shifted.beta[1:], fit.beta[1:], atol=1e-8)
        np.testing.assert_allclose(shifted.se, fit.se, rtol=1e-7)

    def test_outcome_scaling(self, ar1_panel):
        c = -3.0
        fit = fit_ols_nw(ar1_panel)
        scaled = fit_ols_nw(ar1_panel.assign(y=c * ar1_panel["y"]))
        np.testing.assert_allclose(scaled.beta, c * fit.beta, rtol=1e-7, atol=1e-9)
        np.testing.assert_allclose(scaled.se, abs(c) * fit.se, rtol=1e-7)
        for idx in range(8):
            expected = wald_test(fit, idx).p_value
            assert wald_test(scaled, idx).p_value == pytest.approx(expected, rel=1e-6, abs=1e-12)
