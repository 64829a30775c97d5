"""
Calibration Statistics

The five statistics compared between simulated and reference log prices:
mean, standard deviation, kurtosis, Kolmogorov-Smirnov distance and the
generalized Hurst exponent (q = 1).
"""

import logging
from typing import Dict, Iterable, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator
from scipy import stats

from ..models.errors import DegenerateSeriesError, NonPositivePriceError


logger = logging.getLogger(__name__)

DEFAULT_TAU_MAX = 19
MOMENT_NAMES = ('mean', 'std_dev', 'kurtosis', 'ks_stat', 'hurst')


def log_prices(prices: Sequence[float]) -> np.ndarray:
    """
    Natural log of a price series

    Raises:
        NonPositivePriceError: At the first price <= 0
    """
    arr = np.asarray(prices, dtype=np.float64)
    bad = np.flatnonzero(~(arr > 0))
    if bad.size:
        raise NonPositivePriceError(int(bad[0]), float(arr[bad[0]]))
    return np.log(arr)


def log_returns(prices: Sequence[float]) -> np.ndarray:
    """First differences of log prices (length n - 1)"""
    return np.diff(log_prices(prices))


def basic_moments(series: Sequence[float], excess: bool = False) -> Tuple[float, float, float]:
    """
    Sample mean, standard deviation (n - 1) and Pearson kurtosis

    Args:
        series: At least 4 observations
        excess: Subtract 3 from the kurtosis

    Returns:
        (mean, std_dev, kurtosis)

    Raises:
        DegenerateSeriesError: Too short, or constant (kurtosis undefined)
    """
    x = np.asarray(series, dtype=np.float64)
    if x.size < 4:
        raise DegenerateSeriesError("kurtosis", f"needs at least 4 observations, got {x.size}")
    mean = float(np.mean(x))
    std = float(np.std(x, ddof=1))
    if np.all(x == x[0]) or std == 0.0:
        raise DegenerateSeriesError("kurtosis", "series is constant")
    kurt = float(stats.kurtosis(x, fisher=excess, bias=True))
    return mean, std, kurt


def ks_statistic(series_a: Sequence[float], series_b: Sequence[float]) -> float:
    """Sup distance between the two empirical CDFs"""
    a = np.asarray(series_a, dtype=np.float64)
    b = np.asarray(series_b, dtype=np.float64)
    if a.size == 0 or b.size == 0:
        raise DegenerateSeriesError("ks_stat", "both series must be non-empty")
    return float(stats.ks_2samp(a, b, method='asymp').statistic)


def hurst_ghe(series: Sequence[float], q: float = 1.0, tau_max: int = DEFAULT_TAU_MAX) -> float:
    """
    Generalized Hurst exponent

    K(tau) = mean |X(t + tau) - X(t)|^q for tau = 1..tau_max; H is the
    least-squares slope of log K(tau) on log tau, divided by q.

    Args:
        series: Log price path, length >= 5 * tau_max
        q: Moment order
        tau_max: Largest lag

    Returns:
        H

    Raises:
        DegenerateSeriesError: Series too short or without increments
    """
    x = np.asarray(series, dtype=np.float64)
    if tau_max < 2:
        raise ValueError(f"tau_max must be >= 2 (got {tau_max})")
    if x.size < 5 * tau_max:
        raise DegenerateSeriesError(
            "hurst", f"length {x.size} < 5 * tau_max = {5 * tau_max}"
        )

    taus = np.arange(1, tau_max + 1)
    k = np.array([np.mean(np.abs(x[tau:] - x[:-tau]) ** q) for tau in taus])
    if np.any(k <= 0):
        raise DegenerateSeriesError("hurst", "series has no increments at some lag")

    slope = np.polyfit(np.log(taus), np.log(k), 1)[0]
    return float(slope / q)


class MomentVector(BaseModel):
    """Five statistics in fixed order"""

    model_config = ConfigDict(frozen=True)

    mean: float
    std_dev: float = Field(..., ge=0)
    kurtosis: float
    ks_stat: float = Field(..., ge=0, le=1)
    hurst: float

    @field_validator('kurtosis')
    @classmethod
    def validate_kurtosis(cls, v: float) -> float:
        # Pearson bound, with rounding slack
        if v < 1.0 - 1e-9:
            raise ValueError(f'kurtosis must be >= 1 (got {v})')
        return v

    def as_array(self) -> np.ndarray:
        return np.array([getattr(self, name) for name in MOMENT_NAMES])

    @classmethod
    def from_array(cls, values: Sequence[float]) -> 'MomentVector':
        return cls(**dict(zip(MOMENT_NAMES, (float(v) for v in values))))


def moment_vector(
    log_price_series: Sequence[float],
    reference_log_prices: Sequence[float],
    tau_max: int = DEFAULT_TAU_MAX,
) -> MomentVector:
    """
    Statistics of a log price series, with KS measured against the reference

    Args:
        log_price_series: Series whose moments are computed
        reference_log_prices: Series the KS distance is measured against
        tau_max: Largest GHE lag

    Returns:
        MomentVector
    """
    mean, std, kurt = basic_moments(log_price_series)
    return MomentVector(
        mean=mean,
        std_dev=std,
        kurtosis=kurt,
        ks_stat=ks_statistic(log_price_series, reference_log_prices),
        hurst=hurst_ghe(log_price_series, tau_max=tau_max),
    )


def moment_confidence_intervals(
    results: Iterable,
    reference_log_prices: Sequence[float],
    level: float = 0.95,
    tau_max: int = DEFAULT_TAU_MAX,
) -> Dict[str, Tuple[float, float]]:
    """
    t-based confidence intervals of each statistic over simulated paths

    Args:
        results: SimulationResult objects simulated at one parameter set
        reference_log_prices: Reference series for the KS statistic
        level: Confidence level
        tau_max: Largest GHE lag

    Returns:
        Mapping statistic name -> (low, high)

    Raises:
        ValueError: Fewer than two paths
    """
    vectors = np.array([
        moment_vector(r.log_prices, reference_log_prices, tau_max).as_array()
        for r in results
    ])
    if vectors.shape[0] < 2:
        raise ValueError("confidence intervals need at least 2 simulated paths")

    n = vectors.shape[0]
    mean = vectors.mean(axis=0)
    half = stats.t.ppf(0.5 + level / 2.0, df=n - 1) * vectors.std(axis=0, ddof=1) / np.sqrt(n)
    logger.debug(f"Moment confidence intervals over {n} paths", extra={'count': n})
    return {
        name: (float(mean[i] - half[i]), float(mean[i] + half[i]))
        for i, name in enumerate(MOMENT_NAMES)
    }
