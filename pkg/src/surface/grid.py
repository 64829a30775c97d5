"""
Surface Interpolation

Piecewise-cubic (Clough-Tocher) interpolation of scattered surface points
onto a regular grid. Grid nodes outside the convex hull are missing.
"""

import logging
from pathlib import Path
from typing import Union

import numpy as np
import pandas as pd
from scipy.interpolate import CloughTocher2DInterpolator

from ..models.errors import CollinearPointsError


logger = logging.getLogger(__name__)


def interpolate_grid(points: Union[pd.DataFrame, np.ndarray], resolution: int = 100) -> pd.DataFrame:
    """
    Interpolate (x, y, f) points onto a resolution x resolution grid

    Points with non-finite f are left out of the triangulation.

    Args:
        points: DataFrame with x, y, f columns, or an (N, 3) array
        resolution: Nodes per axis (>= 2)

    Returns:
        DataFrame with columns x, y, f_interp, in_hull (row-major, x fastest)

    Raises:
        ValueError: Fewer than 4 usable points or resolution < 2
        CollinearPointsError: All points on one line
    """
    if isinstance(points, pd.DataFrame):
        data = points[['x', 'y', 'f']].to_numpy(dtype=np.float64)
    else:
        data = np.asarray(points, dtype=np.float64)
    data = data[np.isfinite(data).all(axis=1)]
    if resolution < 2:
        raise ValueError(f"resolution must be >= 2 (got {resolution})")
    if data.shape[0] < 4:
        raise ValueError(f"interpolation needs at least 4 points with finite f, got {data.shape[0]}")

    xy = data[:, :2]
    if np.linalg.matrix_rank(xy - xy.mean(axis=0), tol=1e-12 * max(np.ptp(xy), 1.0)) < 2:
        raise CollinearPointsError(data.shape[0])

    interpolant = CloughTocher2DInterpolator(xy, data[:, 2], fill_value=np.nan, rescale=True)
    gx = np.linspace(xy[:, 0].min(), xy[:, 0].max(), resolution)
    gy = np.linspace(xy[:, 1].min(), xy[:, 1].max(), resolution)
    mesh_x, mesh_y = np.meshgrid(gx, gy)
    values = interpolant(mesh_x, mesh_y)

    grid = pd.DataFrame({
        'x': mesh_x.ravel(),
        'y': mesh_y.ravel(),
        'f_interp': values.ravel(),
    })
    grid['in_hull'] = grid['f_interp'].notna()
    logger.debug(
        f"Interpolated {data.shape[0]} points onto {resolution}x{resolution} grid",
        extra={'count': int(data.shape[0])}
    )
    return grid


def write_grid(grid: pd.DataFrame, output_dir: Union[str, Path]) -> Path:
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / "surface_grid.csv"
    grid.to_csv(path, index=False, float_format='%.10g')
    return path
