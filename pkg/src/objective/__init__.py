"""
Simulated-Moments Objective

Moving block bootstrap, weight matrix and the quadratic-form objective.
"""

from .bootstrap import BootstrapCovariance, block_bootstrap, bootstrap_covariance, iter_block_bootstrap
from .msm import (
    CalibrationObjective,
    ObjectiveSpec,
    anchor_params,
    build_objective_spec,
    evaluation_seeds,
    g_hat,
    objective,
    simulated_moments,
)
from .weights import WeightMatrix, weight_matrix

__all__ = [
    'block_bootstrap',
    'iter_block_bootstrap',
    'bootstrap_covariance',
    'BootstrapCovariance',
    'WeightMatrix',
    'weight_matrix',
    'ObjectiveSpec',
    'anchor_params',
    'build_objective_spec',
    'evaluation_seeds',
    'simulated_moments',
    'g_hat',
    'objective',
    'CalibrationObjective',
]
