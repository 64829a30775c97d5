"""
Heuristic Optimizers

Nelder-Mead with threshold accepting, and a simple genetic algorithm,
over a bounded free-parameter space.
"""

from .genetic import GASettings, Population, ga_run, selection_probabilities
from .nm_ta import ThresholdSchedule, nm_ta_run, threshold_accepting_phase
from .results import OptimizationResult
from .simplex import NMCoefficients, NMKind, Simplex, nm_step, nm_transform, ta_shift
from .space import (
    FreeParameter,
    FreeParameterSpace,
    default_free_parameter,
    init_free_params,
    initial_simplex,
)
from .summary import confidence_intervals

__all__ = [
    'FreeParameter',
    'FreeParameterSpace',
    'default_free_parameter',
    'init_free_params',
    'initial_simplex',
    'NMCoefficients',
    'NMKind',
    'Simplex',
    'nm_transform',
    'nm_step',
    'ta_shift',
    'ThresholdSchedule',
    'threshold_accepting_phase',
    'nm_ta_run',
    'GASettings',
    'Population',
    'selection_probabilities',
    'ga_run',
    'OptimizationResult',
    'confidence_intervals',
]
