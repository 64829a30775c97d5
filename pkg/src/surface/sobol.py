"""
Two-Dimensional Sobol Points
"""

import warnings

import numpy as np
from scipy.stats import qmc


def sobol_2d(n: int, skip_zero: bool = True) -> np.ndarray:
    """
    First n points of the unscrambled two-dimensional Sobol sequence

    Args:
        n: Number of points (>= 1)
        skip_zero: Drop the leading origin, so the first point is (0.5, 0.5)

    Returns:
        Array of shape (n, 2) with coordinates in [0, 1)
    """
    if n < 1:
        raise ValueError(f"n must be >= 1 (got {n})")
    engine = qmc.Sobol(d=2, scramble=False)
    if skip_zero:
        engine.fast_forward(1)
    with warnings.catch_warnings():
        # balance warning for non powers of two
        warnings.simplefilter("ignore", UserWarning)
        return engine.random(n)
