"""
Unit tests for calibration statistics and stylized-fact diagnostics
"""

import numpy as np
import pytest
from pydantic import ValidationError

from src.engine import run_replications
from src.models.errors import DegenerateSeriesError, NonPositivePriceError
from src.moments import (
    MOMENT_NAMES,
    MomentVector,
    acf,
    basic_moments,
    hurst_ghe,
    ks_statistic,
    log_prices,
    log_returns,
    moment_confidence_intervals,
    moment_vector,
    stylized_report,
)


def ar1(phi, n, rng):
    """Stationary AR(1) series with unit innovations"""
    x = np.empty(n)
    x[0] = rng.normal() / np.sqrt(1 - phi ** 2)
    for t in range(1, n):
        x[t] = phi * x[t - 1] + rng.normal()
    return x


def brute_force_ks(a, b):
    a, b = np.sort(a), np.sort(b)
    points = np.concatenate([a, b])
    cdf_a = np.searchsorted(a, points, side='right') / a.size
    cdf_b = np.searchsorted(b, points, side='right') / b.size
    return float(np.max(np.abs(cdf_a - cdf_b)))


@pytest.mark.unit
class TestLogPrices:
    """Price transforms"""

    def test_log_returns_length(self):
        assert log_returns([100.0, 110.0, 99.0]).shape == (2,)

    def test_non_positive_price_rejected(self):
        """Should name the first offending index"""
        with pytest.raises(NonPositivePriceError) as exc_info:
            log_prices([1.0, 2.0, 0.0, -1.0])
        assert exc_info.value.index == 2


@pytest.mark.unit
class TestBasicMoments:
    """Mean, standard deviation, kurtosis"""

    def test_hand_computed(self):
        """Should match hand-computed values for 1, 2, 3, 4"""
        mean, std, kurt = basic_moments([1.0, 2.0, 3.0, 4.0])
        assert mean == pytest.approx(2.5)
        assert std == pytest.approx(np.sqrt(5.0 / 3.0))
        assert kurt == pytest.approx(1.64)

    def test_excess_kurtosis(self):
        _, _, kurt = basic_moments([1.0, 2.0, 3.0, 4.0], excess=True)
        assert kurt == pytest.approx(1.64 - 3.0)

    def test_constant_series_degenerate(self):
        with pytest.raises(DegenerateSeriesError):
            basic_moments([5.0] * 10)

    def test_short_series_degenerate(self):
        with pytest.raises(DegenerateSeriesError):
            basic_moments([1.0, 2.0, 3.0])


@pytest.mark.unit
class TestKSStatistic:
    """Two-sample Kolmogorov-Smirnov distance"""

    def test_identical_series(self):
        x = np.random.default_rng(0).normal(size=100)
        assert ks_statistic(x, x) == 0.0

    def test_disjoint_series(self):
        assert ks_statistic([1.0, 2.0, 3.0], [4.0, 5.0, 6.0]) == 1.0

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_matches_brute_force_cdf(self, seed):
        """Should equal the brute-force sup distance between empirical CDFs"""
        rng = np.random.default_rng(seed)
        a = np.round(rng.normal(size=37), 2)
        b = np.round(rng.normal(0.3, 1.2, size=53), 2)
        assert ks_statistic(a, b) == pytest.approx(brute_force_ks(a, b), abs=1e-12)

    def test_symmetric(self):
        rng = np.random.default_rng(3)
        a, b = rng.normal(size=80), rng.standard_t(3, size=120)
        assert ks_statistic(a, b) == pytest.approx(ks_statistic(b, a))

    def test_invariant_to_increasing_transform(self):
        """Should only depend on the ranks of the pooled sample"""
        rng = np.random.default_rng(4)
        a, b = rng.normal(size=80), rng.normal(0.5, 2.0, size=120)
        assert ks_statistic(np.exp(a), np.exp(b)) == pytest.approx(ks_statistic(a, b))
        assert ks_statistic(a ** 3 + 2 * a, b ** 3 + 2 * b) == pytest.approx(ks_statistic(a, b))

    def test_empty_series_degenerate(self):
        with pytest.raises(DegenerateSeriesError):
            ks_statistic([], [1.0])


@pytest.mark.unit
class TestHurstGHE:
    """Generalized Hurst exponent"""

    def test_brownian_paths(self):
        """Should estimate H = 0.5 +/- 0.05 on random walks"""
        rng = np.random.default_rng(42)
        estimates = [hurst_ghe(np.cumsum(rng.normal(size=10000))) for _ in range(20)]
        assert abs(np.mean(estimates) - 0.5) < 0.05
        assert all(abs(h - 0.5) < 0.1 for h in estimates)

    def test_trend_is_persistent(self):
        """Should estimate H close to 1 for a straight line"""
        assert hurst_ghe(np.arange(200, dtype=float)) == pytest.approx(1.0)

    def test_invariant_to_affine_map(self):
        """Should not change under positive scaling plus a shift"""
        x = np.cumsum(np.random.default_rng(5).normal(size=3000))
        assert hurst_ghe(2.5 * x + 40.0) == pytest.approx(hurst_ghe(x))

    def test_too_short(self):
        with pytest.raises(DegenerateSeriesError):
            hurst_ghe(np.arange(50, dtype=float), tau_max=19)

    def test_constant_series(self):
        with pytest.raises(DegenerateSeriesError):
            hurst_ghe(np.ones(200))


@pytest.mark.unit
class TestMomentVector:
    """Five-statistic vector"""

    def test_series_against_itself(self, reference_log_prices):
        """Should report KS 0 and the basic moments of the series"""
        vector = moment_vector(reference_log_prices, reference_log_prices)
        mean, std, kurt = basic_moments(reference_log_prices)
        assert vector.ks_stat == 0.0
        assert vector.mean == pytest.approx(mean)
        assert vector.std_dev == pytest.approx(std)
        assert vector.kurtosis == pytest.approx(kurt)
        assert vector.hurst == pytest.approx(hurst_ghe(reference_log_prices))

    def test_array_order(self, reference_log_prices):
        vector = moment_vector(reference_log_prices, reference_log_prices)
        assert MomentVector.from_array(vector.as_array()) == vector
        assert vector.as_array()[list(MOMENT_NAMES).index('hurst')] == vector.hurst

    def test_kurtosis_lower_bound(self):
        with pytest.raises(ValidationError):
            MomentVector(mean=0.0, std_dev=1.0, kurtosis=0.5, ks_stat=0.0, hurst=0.5)

    def test_confidence_intervals(self, small_params, reference_log_prices):
        """Should bracket every statistic's mean over simulated paths"""
        results = run_replications(small_params, master_seed=3, I=4)
        intervals = moment_confidence_intervals(results, reference_log_prices)
        assert set(intervals) == set(MOMENT_NAMES)
        assert all(low <= high for low, high in intervals.values())

    def test_confidence_intervals_need_two_paths(self, small_params, reference_log_prices):
        results = run_replications(small_params, master_seed=3, I=1)
        with pytest.raises(ValueError):
            moment_confidence_intervals(results, reference_log_prices)


@pytest.mark.unit
class TestStylized:
    """ACF and stylized-fact report"""

    def test_acf_white_noise(self):
        """Should start at 1 and keep most lags inside the band"""
        result = acf(np.random.default_rng(1).normal(size=5000), max_lag=50)
        assert result.values[0] == pytest.approx(1.0)
        assert result.band == pytest.approx(1.96 / np.sqrt(5000))
        assert np.mean(np.abs(result.values[1:]) <= result.band) >= 0.9

    def test_acf_of_persistent_ar1(self):
        """Should recover a lag-1 autocorrelation of 0.9"""
        result = acf(ar1(0.9, 20000, np.random.default_rng(7)), max_lag=5)
        assert result.values[1] == pytest.approx(0.9, abs=0.02)
        assert result.values[2] == pytest.approx(0.81, abs=0.03)

    def test_report_band_uses_all_returns(self):
        """Should flag weak dependence that per-path noise would hide"""
        rng = np.random.default_rng(8)
        paths, n = 40, 1500
        prices = [100.0 * np.exp(np.concatenate([[0.0], np.cumsum(1e-3 * ar1(0.06, n, rng))]))
                  for _ in range(paths)]
        report = stylized_report(prices, max_lag=10)

        band = report.acf_returns["band"].iloc[0]
        assert band == pytest.approx(1.96 / np.sqrt(paths * n))
        assert report.acf_returns["acf"].iloc[1] > band

    def test_histogram_with_zero_iqr(self):
        """Should still spread mostly-flat returns over several bins"""
        rng = np.random.default_rng(9)
        prices = np.full(400, 100.0)
        for t in rng.choice(np.arange(1, 400), size=20, replace=False):
            prices[t:] *= np.exp(rng.normal(0.0, 1e-3))
        report = stylized_report([prices], max_lag=10)

        assert len(report.hist) > 1
        assert report.hist["count"].sum() == 399

    def test_acf_needs_enough_observations(self):
        with pytest.raises(ValueError):
            acf([1.0, 2.0, 3.0], max_lag=5)

    def test_report_tables(self, small_params, tmp_path):
        """Should build and write histogram, Q-Q and both ACF tables"""
        results = run_replications(small_params, master_seed=1, I=3)
        report = stylized_report(results, max_lag=10)

        assert report.n_returns == 3 * (small_params.T - 1)
        assert report.hist['count'].sum() == report.n_returns
        assert list(report.acf_returns.columns) == ['lag', 'acf', 'band']
        assert len(report.acf_abs_returns) == 11
        assert report.qq.shape[1] == 2

        written = report.write(tmp_path)
        assert sorted(p.name for p in written) == [
            'acf_abs_returns.csv', 'acf_returns.csv', 'hist.csv', 'qq.csv'
        ]

    def test_report_needs_results(self):
        with pytest.raises(ValueError):
            stylized_report([])
