"""
Stylized-Fact Diagnostics

Pooled log-return histogram with a fitted normal, normal Q-Q points and
autocorrelations of returns and absolute returns with the white-noise band.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Sequence, Union

import numpy as np
import pandas as pd
from scipy import stats
from statsmodels.tsa.stattools import acf as sm_acf

from .statistics import log_returns


logger = logging.getLogger(__name__)

MAX_QQ_POINTS = 2000


@dataclass(frozen=True)
class AcfResult:
    """Sample autocorrelations for lags 0..max_lag with the +/- band"""
    values: np.ndarray
    band: float

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            'lag': np.arange(self.values.size),
            'acf': self.values,
            'band': self.band,
        })


def acf(series: Sequence[float], max_lag: int) -> AcfResult:
    """
    Sample autocorrelation function

    Args:
        series: Observations, length > max_lag
        max_lag: Largest lag

    Returns:
        AcfResult with values[0] == 1 and band 1.96 / sqrt(n)
    """
    x = np.asarray(series, dtype=np.float64)
    if x.size <= max_lag:
        raise ValueError(f"series length {x.size} must exceed max_lag {max_lag}")
    values = sm_acf(x, nlags=max_lag, fft=True)
    return AcfResult(values=np.clip(values, -1.0, 1.0), band=1.96 / np.sqrt(x.size))


@dataclass
class StylizedReport:
    """Tables of one stylized-fact report"""
    hist: pd.DataFrame
    qq: pd.DataFrame
    acf_returns: pd.DataFrame
    acf_abs_returns: pd.DataFrame
    kurtosis: float
    n_returns: int

    def tables(self) -> Dict[str, pd.DataFrame]:
        return {
            'hist.csv': self.hist,
            'qq.csv': self.qq,
            'acf_returns.csv': self.acf_returns,
            'acf_abs_returns.csv': self.acf_abs_returns,
        }

    def write(self, output_dir: Union[str, Path]) -> list[Path]:
        """Write every table as CSV, returning the written paths"""
        out = Path(output_dir)
        out.mkdir(parents=True, exist_ok=True)
        written = []
        for name, frame in self.tables().items():
            path = out / name
            frame.to_csv(path, index=False, float_format='%.10g')
            written.append(path)
        logger.info(f"Stylized report written to {out}", extra={'path': str(out)})
        return written


def _mean_acf(paths: list[np.ndarray], max_lag: int) -> AcfResult:
    # averaging R per-path ACFs shrinks the noise by sqrt(R); the band uses all returns
    results = [acf(r, max_lag) for r in paths]
    return AcfResult(
        values=np.mean([r.values for r in results], axis=0),
        band=float(1.96 / np.sqrt(sum(p.size for p in paths))),
    )


def stylized_report(results: Sequence, max_lag: int = 50) -> StylizedReport:
    """
    Build the report from simulated paths

    Returns are pooled across paths for the histogram and Q-Q plot; ACFs
    are averaged over per-path ACFs so no return spans two paths, with
    the band 1.96 / sqrt(total returns).

    Args:
        results: SimulationResult objects (or raw price arrays)
        max_lag: Largest ACF lag (capped by path length)

    Returns:
        StylizedReport
    """
    if len(results) == 0:
        raise ValueError("stylized_report needs at least one result")

    paths = []
    for r in results:
        prices = r.market_prices[1:] if hasattr(r, 'market_prices') else np.asarray(r)
        paths.append(log_returns(prices))
    pooled = np.concatenate(paths)

    mu, sigma = stats.norm.fit(pooled)
    # Freedman-Diaconis collapses to one bin when the IQR is zero
    bins = 'fd' if stats.iqr(pooled) > 0 else 'sturges'
    counts, edges = np.histogram(pooled, bins=bins)
    centers = (edges[:-1] + edges[1:]) / 2.0
    density = stats.norm.pdf(centers, mu, sigma) if sigma > 0 else np.zeros_like(centers)
    hist = pd.DataFrame({
        'bin_left': edges[:-1],
        'bin_right': edges[1:],
        'count': counts,
        'normal_density': density,
    })

    (theoretical, ordered), _ = stats.probplot(pooled, dist='norm')
    sample_q = (ordered - mu) / sigma if sigma > 0 else ordered - mu
    if theoretical.size > MAX_QQ_POINTS:
        keep = np.unique(np.linspace(0, theoretical.size - 1, MAX_QQ_POINTS).astype(int))
        theoretical, sample_q = theoretical[keep], sample_q[keep]
    qq = pd.DataFrame({'theoretical_q': theoretical, 'sample_q': sample_q})

    lag = min(max_lag, min(p.size for p in paths) - 1)
    acf_ret = _mean_acf(paths, lag)
    acf_abs = _mean_acf([np.abs(p) for p in paths], lag)

    kurt = float(stats.kurtosis(pooled, fisher=False, bias=True)) if sigma > 0 else float('nan')
    logger.info(
        f"Stylized report: {pooled.size} pooled returns, kurtosis={kurt:.3f}",
        extra={'count': int(pooled.size)}
    )
    return StylizedReport(
        hist=hist,
        qq=qq,
        acf_returns=acf_ret.to_frame(),
        acf_abs_returns=acf_abs.to_frame(),
        kurtosis=kurt,
        n_returns=int(pooled.size),
    )
