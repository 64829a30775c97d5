"""
Calibration Summary

Confidence intervals of calibrated parameters over repeated runs.
"""

from typing import Dict, Sequence

import numpy as np
from scipy import stats

from .results import OptimizationResult


def confidence_intervals(
    samples: Sequence,
    names: Sequence[str] = (),
    level: float = 0.95,
) -> Dict[str, Dict[str, float]]:
    """
    Mean +/- t* s / sqrt(n) per parameter

    Args:
        samples: OptimizationResult objects, or an (R, n) array of best points
        names: Parameter names (taken from the results when omitted)
        level: Confidence level

    Returns:
        name -> {"mean", "low", "high", "std_error"}

    Raises:
        ValueError: Fewer than two samples
    """
    if len(samples) and isinstance(samples[0], OptimizationResult):
        names = list(names) or samples[0].free_params
        data = np.array([[r.best_theta[name] for name in names] for r in samples], dtype=np.float64)
    else:
        data = np.atleast_2d(np.asarray(samples, dtype=np.float64))
        names = list(names) or [f"x{i}" for i in range(data.shape[1])]

    n = data.shape[0]
    if n < 2:
        raise ValueError("confidence intervals need at least 2 runs")

    mean = data.mean(axis=0)
    std_error = data.std(axis=0, ddof=1) / np.sqrt(n)
    t_crit = stats.t.ppf(0.5 + level / 2.0, df=n - 1)
    return {
        name: {
            'mean': float(mean[i]),
            'low': float(mean[i] - t_crit * std_error[i]),
            'high': float(mean[i] + t_crit * std_error[i]),
            'std_error': float(std_error[i]),
        }
        for i, name in enumerate(names)
    }
