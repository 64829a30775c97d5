"""
Unit tests for trader behavioral rules
"""

import numpy as np
import pytest

from src.agents import HFTraderPool, LFTraderPool, Strategy
from src.agents.rules import (
    chartist_probability,
    chartist_size,
    exponential_size,
    fundamentalist_size,
    hf_is_active,
    hf_order_price,
    hf_order_size,
    hf_profit,
    lf_order_price,
    lf_profit,
    lf_to_order,
    sample_lf_frequency,
    sample_truncated_exponential,
    update_fundamental,
)
from src.lob import Side
from src.models.errors import InvalidParametersError


@pytest.fixture
def rng():
    return np.random.default_rng(123)


@pytest.mark.unit
class TestTruncatedExponential:
    """LF trading frequency draws"""

    def test_draws_within_bounds(self, rng):
        """Should never leave [theta_min, theta_max]"""
        draws = sample_truncated_exponential(rng, 20, 10, 40, size=20000)
        assert draws.min() >= 10
        assert draws.max() <= 40

    def test_mean_matches_truncated_exponential(self, rng):
        """Should match the analytic mean of the truncated distribution"""
        theta, low, high = 20.0, 10.0, 40.0
        width = high - low
        expected = low + theta - width * np.exp(-width / theta) / (1 - np.exp(-width / theta))
        draws = sample_truncated_exponential(rng, theta, low, high, size=100000)
        assert draws.mean() == pytest.approx(expected, rel=0.01)

    def test_degenerate_bounds(self, rng):
        """Should return theta_min when the interval is a point"""
        assert sample_truncated_exponential(rng, 20, 15, 15) == 15

    def test_inverted_bounds_rejected(self, rng):
        with pytest.raises(InvalidParametersError):
            sample_truncated_exponential(rng, 20, 40, 10)

    def test_frequency_is_integer(self, rng):
        """Should round frequencies to whole sessions inside the bounds"""
        freq = sample_lf_frequency(rng, 20, 10, 40, size=1000)
        assert freq.dtype.kind == 'i'
        assert freq.min() >= 10 and freq.max() <= 40
        assert isinstance(sample_lf_frequency(rng, 20, 10, 40), int)


@pytest.mark.unit
class TestOrderSizes:
    """Chartist and fundamentalist demand"""

    def test_chartist_without_noise(self, rng):
        """Should follow the last price change"""
        assert chartist_size(0.04, 0.0, 101.0, 100.0, rng) == pytest.approx(0.04)
        assert chartist_size(0.04, 0.0, 99.0, 100.0, rng) == pytest.approx(-0.04)

    def test_fundamentalist_without_noise(self, rng):
        """Should buy below and sell above the fundamental value"""
        assert fundamentalist_size(0.04, 0.0, 105.0, 100.0, rng) == pytest.approx(0.2)
        assert fundamentalist_size(0.04, 0.0, 95.0, 100.0, rng) == pytest.approx(-0.2)

    def test_vectorized_noise(self, rng):
        """Should return one draw per trader with the requested spread"""
        sizes = chartist_size(0.04, 0.05, 100.0, 100.0, rng, size=50000)
        assert sizes.shape == (50000,)
        assert sizes.std() == pytest.approx(0.05, rel=0.02)

    def test_zero_demand_places_no_order(self):
        """Should place nothing for a zero signed size"""
        assert lf_to_order(0.0, 100.0, 20, 1, 0, 1) is None
        order = lf_to_order(-2.5, 100.0, 20, 1, 0, 1)
        assert order.side is Side.SELL and order.size == 2.5 and order.lifetime == 20


@pytest.mark.unit
class TestPricesAndFundamental:
    """Multiplicative price draws"""

    def test_fundamental_without_noise(self, rng):
        """Should grow by exactly (1 + delta)"""
        assert update_fundamental(100.0, 0.01, 0.0, rng) == pytest.approx(101.0)

    def test_lf_prices_positive(self, rng):
        """Should stay positive even with a huge shock scale"""
        prices = lf_order_price(100.0, 0.0, 2.0, rng, size=10000)
        assert (prices > 0).all()

    def test_lf_price_centered_on_drifted_price(self, rng):
        prices = lf_order_price(100.0, 0.001, 0.01, rng, size=100000)
        assert prices.mean() == pytest.approx(100.1, rel=1e-3)


@pytest.mark.unit
class TestStrategySwitching:
    """Chartist probability"""

    def test_equal_profits_give_even_odds(self):
        assert chartist_probability(3.0, 3.0, 1.0) == pytest.approx(0.5)

    def test_matches_softmax(self):
        """Should equal the two-way softmax of profits over zeta"""
        pi_c, pi_f, zeta = 1.0, -0.5, 0.7
        expected = np.exp(pi_c / zeta) / (np.exp(pi_c / zeta) + np.exp(pi_f / zeta))
        assert chartist_probability(pi_c, pi_f, zeta) == pytest.approx(expected)

    def test_large_profits_do_not_overflow(self):
        """Should saturate instead of producing NaN"""
        assert chartist_probability(1e6, 0.0, 1e-3) == pytest.approx(1.0)
        assert chartist_probability(0.0, 1e6, 1e-3) == pytest.approx(0.0)

    def test_common_profit_shift_ignored(self):
        """Should depend only on the profit difference"""
        pi_c = np.array([-2.0, 0.3, 1.5])
        pi_f = np.array([0.5, 0.3, -1.0])
        base = chartist_probability(pi_c, pi_f, 0.8)
        for shift in (-50.0, 0.25, 1e3):
            np.testing.assert_allclose(chartist_probability(pi_c + shift, pi_f + shift, 0.8), base)

    def test_non_positive_zeta_rejected(self):
        with pytest.raises(InvalidParametersError):
            chartist_probability(1.0, 0.0, 0.0)

    def test_profit_identity(self):
        """Should score (market price - order price) * signed size"""
        assert lf_profit(101.0, 100.0, 2.0) == pytest.approx(2.0)
        assert lf_profit(101.0, 100.0, -2.0) == pytest.approx(-2.0)
        assert hf_profit(101.0, 100.0, 2.0, Side.SELL) == pytest.approx(-2.0)


@pytest.mark.unit
class TestHFRules:
    """High-frequency activation, size and price"""

    def test_activation_threshold(self):
        """Should activate only when the relative change exceeds the threshold"""
        assert hf_is_active(101.0, 100.0, 0.005)
        assert not hf_is_active(101.0, 100.0, 0.02)
        mask = hf_is_active(101.0, 100.0, np.array([0.0, 0.01, 0.2]))
        assert mask.tolist() == [True, False, False]

    def test_size_needs_opposite_depth(self, rng):
        """Should place nothing against an empty opposite side"""
        assert hf_order_size([], 0.625, rng) is None
        assert exponential_size(None, 0.625, rng) is None

    def test_size_mean(self, rng):
        """Should draw sizes with mean lambda times the opposite mean size"""
        sizes = [hf_order_size([1.0, 3.0], 0.5, rng) for _ in range(20000)]
        assert np.mean(sizes) == pytest.approx(1.0, rel=0.03)

    def test_price_references_opposite_quote(self, rng):
        """Should sell below the best bid and buy above the best ask"""
        sell = hf_order_price(99.0, 101.0, Side.SELL, 0.0, 0.01, rng)
        buy = hf_order_price(99.0, 101.0, Side.BUY, 0.0, 0.01, rng)
        assert 99.0 * 0.99 <= sell <= 99.0
        assert 101.0 <= buy <= 101.0 * 1.01

    def test_price_missing_quote(self, rng):
        assert hf_order_price(None, 101.0, Side.SELL, 0.0, 0.01, rng) is None
        assert hf_order_price(99.0, None, Side.BUY, 0.0, 0.01, rng) is None


@pytest.mark.unit
class TestTraderPools:
    """Population initialization"""

    def test_lf_pool(self, small_params, rng):
        """Should start everyone at even odds and activate everyone in session 1"""
        pool = LFTraderPool(small_params, rng)
        assert pool.size == small_params.N_L
        assert np.all(pool.prob_chartist == 0.5)
        assert pool.active_mask(1).all()
        trader = pool.trader(0)
        assert trader.strategy is Strategy.FUNDAMENTALIST
        assert trader.last_order is None

    def test_lf_activation_follows_frequency(self, small_params, rng):
        """Should reactivate a trader exactly `frequency` sessions after the last activation"""
        pool = LFTraderPool(small_params, rng)
        pool.last_activation[:] = 1
        f = int(pool.frequency[0])
        assert not pool.active_mask(f)[0]
        assert pool.active_mask(1 + f)[0]

    def test_hf_thresholds_within_bounds(self, small_params, rng):
        pool = HFTraderPool(small_params, rng)
        assert pool.threshold.shape == (small_params.N_H,)
        assert pool.threshold.min() >= small_params.eta_min
        assert pool.threshold.max() <= small_params.eta_max
