"""
Workload metrics (Prometheus, optional)
"""

from .evaluations import (
    get_evaluation_stats,
    is_metrics_enabled,
    record_objective_evaluation,
    record_optimizer_iteration,
    record_simulation,
    reset_evaluation_stats,
    set_metrics_enabled,
)

__all__ = [
    'record_simulation',
    'record_objective_evaluation',
    'record_optimizer_iteration',
    'get_evaluation_stats',
    'is_metrics_enabled',
    'reset_evaluation_stats',
    'set_metrics_enabled',
]
