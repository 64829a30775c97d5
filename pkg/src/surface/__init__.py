"""
Objective Surfaces
"""

from .evaluate import SurfacePoints, SurfaceSpec, evaluate_surface, map_points
from .grid import interpolate_grid, write_grid
from .sobol import sobol_2d

__all__ = [
    'sobol_2d',
    'SurfaceSpec',
    'SurfacePoints',
    'map_points',
    'evaluate_surface',
    'interpolate_grid',
    'write_grid',
]
