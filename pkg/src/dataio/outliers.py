"""
Tukey Outlier Screening
"""

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np


@dataclass(frozen=True)
class TukeyInterval:
    """[Q1 - 1.5 IQR, Q3 + 1.5 IQR]"""
    low: float
    high: float

    def is_outlier(self, value: Union[float, np.ndarray]) -> Union[bool, np.ndarray]:
        outside = (np.asarray(value) < self.low) | (np.asarray(value) > self.high)
        return bool(outside) if np.ndim(outside) == 0 else outside

    def __contains__(self, value: float) -> bool:
        return self.low <= value <= self.high


def tukey_interval(prices: Sequence[float], k: float = 1.5) -> TukeyInterval:
    """
    Boxplot fences with linearly interpolated quartiles

    Raises:
        ValueError: Fewer than 4 prices
    """
    x = np.asarray(prices, dtype=np.float64)
    if x.size < 4:
        raise ValueError(f"tukey_interval needs at least 4 prices, got {x.size}")
    q1, q3 = np.percentile(x, [25, 75], method='linear')
    iqr = q3 - q1
    return TukeyInterval(low=float(q1 - k * iqr), high=float(q3 + k * iqr))
