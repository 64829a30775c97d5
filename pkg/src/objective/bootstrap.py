"""
Moving Block Bootstrap

Resamples a series by concatenating overlapping blocks of length b that
start at uniformly random offsets; the last block is truncated so every
sample has the original length.
"""

import logging
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from ..moments.statistics import DEFAULT_TAU_MAX, moment_vector


logger = logging.getLogger(__name__)

CHUNK_SIZE = 500


def _check_block(length: int, b: int, n: int) -> None:
    if b < 1 or b > length:
        raise ValueError(f"block length b must be in [1, {length}] (got {b})")
    if n < 1:
        raise ValueError(f"number of samples n must be >= 1 (got {n})")


def _resample(x: np.ndarray, b: int, count: int, rng: np.random.Generator) -> np.ndarray:
    length = x.size
    n_blocks = -(-length // b)
    starts = rng.integers(0, length - b + 1, size=(count, n_blocks))
    index = (starts[:, :, None] + np.arange(b)).reshape(count, n_blocks * b)[:, :length]
    return x[index]


def iter_block_bootstrap(
    series: Sequence[float],
    b: int,
    n: int,
    rng: np.random.Generator,
    chunk_size: int = CHUNK_SIZE,
) -> Iterator[np.ndarray]:
    """Yield the n samples in chunks of at most `chunk_size` rows"""
    x = np.asarray(series, dtype=np.float64)
    _check_block(x.size, b, n)
    remaining = n
    while remaining > 0:
        count = min(chunk_size, remaining)
        yield _resample(x, b, count, rng)
        remaining -= count


def block_bootstrap(
    series: Sequence[float],
    b: int,
    n: int,
    rng: np.random.Generator,
) -> np.ndarray:
    """
    n moving-block bootstrap samples

    Args:
        series: Original series
        b: Block length (1 <= b <= len(series))
        n: Number of samples
        rng: Generator

    Returns:
        Array of shape (n, len(series))

    Raises:
        ValueError: b out of range or n < 1
    """
    return np.vstack(list(iter_block_bootstrap(series, b, n, rng)))


@dataclass
class BootstrapCovariance:
    """Covariance of the statistics across bootstrap samples

    Attributes:
        cov: 5x5 covariance matrix
        distributions: (n, 5) statistics of every sample
    """
    cov: np.ndarray
    distributions: np.ndarray


def bootstrap_covariance(
    series: Sequence[float],
    b: int,
    n: int,
    rng: np.random.Generator,
    tau_max: int = DEFAULT_TAU_MAX,
) -> BootstrapCovariance:
    """
    Covariance of the moment vector under the moving block bootstrap

    The KS entry of each sample is measured against the original series.

    Args:
        series: Reference log prices
        b: Block length
        n: Number of samples
        rng: Generator
        tau_max: Largest GHE lag

    Returns:
        BootstrapCovariance
    """
    x = np.asarray(series, dtype=np.float64)
    rows = []
    for chunk in iter_block_bootstrap(x, b, n, rng):
        rows.extend(moment_vector(sample, x, tau_max).as_array() for sample in chunk)
        logger.debug(f"Bootstrap progress: {len(rows)}/{n}", extra={'count': len(rows)})
    distributions = np.array(rows)
    cov = np.atleast_2d(np.cov(distributions, rowvar=False, ddof=1)) if n > 1 else np.zeros((5, 5))
    cov = (cov + cov.T) / 2.0
    logger.info(f"Bootstrap covariance from {n} samples (b={b})", extra={'count': n})
    return BootstrapCovariance(cov=cov, distributions=distributions)
