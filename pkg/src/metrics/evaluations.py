"""
Prometheus metrics for simulation and calibration workload.
Tracks simulation runs, objective evaluations and optimizer iterations.
"""
try:
    from prometheus_client import Counter, Histogram
    PROMETHEUS_AVAILABLE = True
except ImportError:
    Counter = None
    Histogram = None
    PROMETHEUS_AVAILABLE = False

if PROMETHEUS_AVAILABLE:
    simulations_total = Counter(
        'lobcal_simulations_total',
        'Number of completed model simulations',
    )

    simulation_duration_seconds = Histogram(
        'lobcal_simulation_duration_seconds',
        'Wall time of one model simulation',
        buckets=(0.01, 0.05, 0.1, 0.5, 1, 5, 10, 30, 60, 300),
    )

    objective_evaluations_total = Counter(
        'lobcal_objective_evaluations_total',
        'Number of objective function evaluations',
        ['replications'],
    )

    optimizer_iterations_total = Counter(
        'lobcal_optimizer_iterations_total',
        'Number of optimizer iterations / generations',
        ['method'],
    )
else:
    simulations_total = None
    simulation_duration_seconds = None
    objective_evaluations_total = None
    optimizer_iterations_total = None


# Prometheus export can be switched off (LOBCAL_METRICS_ENABLED=false)
_export_enabled = PROMETHEUS_AVAILABLE

# In-process totals, available without prometheus_client
_totals = {
    'simulations': 0,
    'objective_evaluations': 0,
    'optimizer_iterations': 0,
}


def record_simulation(duration_s: float):
    """
    Record one completed simulation.

    Args:
        duration_s: Wall time of the run in seconds
    """
    _totals['simulations'] += 1
    if _export_enabled:
        simulations_total.inc()
        simulation_duration_seconds.observe(duration_s)


def record_objective_evaluation(replications: int):
    """
    Record one objective evaluation.

    Args:
        replications: Monte Carlo replications used by the evaluation
    """
    _totals['objective_evaluations'] += 1
    if _export_enabled:
        objective_evaluations_total.labels(replications=str(replications)).inc()


def record_optimizer_iteration(method: str):
    """
    Record one optimizer iteration (NM+TA) or generation (GA).

    Args:
        method: Optimizer name (nm_ta, ga)
    """
    _totals['optimizer_iterations'] += 1
    if _export_enabled:
        optimizer_iterations_total.labels(method=method).inc()


def is_metrics_enabled() -> bool:
    """Check if Prometheus metrics are being recorded"""
    return _export_enabled


def set_metrics_enabled(enabled: bool):
    """Turn Prometheus recording on or off (no-op without prometheus_client)"""
    global _export_enabled
    _export_enabled = bool(enabled) and PROMETHEUS_AVAILABLE


def get_evaluation_stats() -> dict:
    """
    Get in-process totals (for the run summary and tests)

    Returns:
        Dict with metrics_enabled flag and counters
    """
    return {
        'metrics_enabled': _export_enabled,
        'counters': dict(_totals),
    }


def reset_evaluation_stats():
    """Reset in-process totals (Prometheus counters are monotonic)"""
    for key in _totals:
        _totals[key] = 0
