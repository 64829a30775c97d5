"""
Moments and Stylized Facts
"""

from .statistics import (
    DEFAULT_TAU_MAX,
    MOMENT_NAMES,
    MomentVector,
    basic_moments,
    hurst_ghe,
    ks_statistic,
    log_prices,
    log_returns,
    moment_confidence_intervals,
    moment_vector,
)
from .stylized import AcfResult, StylizedReport, acf, stylized_report

__all__ = [
    'DEFAULT_TAU_MAX',
    'MOMENT_NAMES',
    'MomentVector',
    'basic_moments',
    'hurst_ghe',
    'ks_statistic',
    'log_prices',
    'log_returns',
    'moment_confidence_intervals',
    'moment_vector',
    'AcfResult',
    'StylizedReport',
    'acf',
    'stylized_report',
]
