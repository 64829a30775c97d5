"""
Pipeline Coordinator

The stages behind the CLI subcommands, callable without click:
reference series -> weights -> calibration / surface / comparison.
"""

import logging
from pathlib import Path
from typing import List, Optional, Union

import numpy as np
import pandas as pd

from ..config.models import RunConfig
from ..dataio.bars import read_bars_csv
from ..engine.replications import run_replications
from ..engine.seeds import derive_seed
from ..models.params import ModelParams
from ..moments.statistics import MOMENT_NAMES, log_prices, moment_confidence_intervals, moment_vector
from ..objective.bootstrap import bootstrap_covariance
from ..objective.msm import CalibrationObjective, anchor_params, build_objective_spec
from ..objective.weights import WeightMatrix, weight_matrix
from ..optimize.genetic import GASettings, ga_run
from ..optimize.nm_ta import nm_ta_run
from ..optimize.results import OptimizationResult
from ..optimize.space import FreeParameterSpace
from ..parallel import WorkerPool


logger = logging.getLogger(__name__)


def reference_series(bars_path: Union[str, Path]) -> np.ndarray:
    """Log mid prices of a bars CSV"""
    return log_prices(read_bars_csv(bars_path))


def estimate_weights(
    reference: np.ndarray,
    b: int = 100,
    n: int = 10000,
    seed: int = 0,
) -> WeightMatrix:
    """Inverse bootstrap covariance of the reference moments"""
    rng = np.random.default_rng(seed)
    covariance = bootstrap_covariance(reference, b, n, rng)
    return weight_matrix(covariance.cov, b=b, n=n, seed=seed)


def weights_for(
    reference: np.ndarray,
    weights_path: Optional[Union[str, Path]] = None,
    b: int = 100,
    n: int = 10000,
    seed: int = 0,
) -> WeightMatrix:
    """Read a weights file, or estimate weights when none is given"""
    if weights_path is not None:
        weights = WeightMatrix.read(weights_path)
        logger.info(
            f"Loaded weights from {weights_path} (condition number {weights.condition_number:.4e})",
            extra={'path': str(weights_path), 'condition_number': weights.condition_number}
        )
        return weights
    return estimate_weights(reference, b, n, seed)


def run_seed(master_seed: int, run: int, runs: int) -> int:
    """Seed of repetition `run`; a single run uses the master seed itself"""
    return int(master_seed) if runs == 1 else derive_seed(master_seed, run)


def calibrate(config: RunConfig, pool: Optional[WorkerPool] = None) -> List[OptimizationResult]:
    """
    Run every repetition of a calibration

    Args:
        config: Validated run configuration
        pool: Worker pool for objective evaluations

    Returns:
        One OptimizationResult per repetition, in run order
    """
    reference = reference_series(config.bars)
    weights = weights_for(reference, config.weights, config.bootstrap.b, config.bootstrap.n, config.seed)
    settings = config.optimizer
    spec = build_objective_spec(
        reference,
        config.params,
        FreeParameterSpace(config.free_params),
        weights,
        replications=settings.replications,
    )

    results = []
    for r in range(settings.runs):
        seed = run_seed(config.seed, r, settings.runs)
        objective = CalibrationObjective(spec, master_seed=seed, pool=pool)
        rng = np.random.default_rng([seed, 1])
        logger.info(
            f"Calibration run {r + 1}/{settings.runs}: method={settings.method}, seed={seed}",
            extra={'count': r + 1}
        )
        if settings.method == 'ga':
            result = ga_run(
                objective,
                spec.space,
                population_size=settings.population_size,
                generations=settings.generations,
                rng=rng,
                settings=GASettings(replications=settings.replications),
                seed=seed,
            )
        else:
            result = nm_ta_run(
                objective,
                spec.space,
                iterations=settings.iterations,
                rng=rng,
                simplex_replications=settings.replications,
                seed=seed,
            )
        results.append(result)
    return results


def compare_moments(
    reference: np.ndarray,
    params: ModelParams,
    paths: int = 50,
    seed: int = 0,
    level: float = 0.95,
    pool: Optional[WorkerPool] = None,
) -> pd.DataFrame:
    """
    Confidence intervals of simulated moments next to the data moments

    Paths are simulated in calibration mode (horizon and initial prices
    taken from the reference series).

    Returns:
        Frame with columns moment, low, high, data
    """
    anchored = anchor_params(params, reference)
    results = run_replications(anchored, seed, paths, pool)
    intervals = moment_confidence_intervals(results, reference, level)
    data = moment_vector(reference, reference).as_array()
    return pd.DataFrame({
        'moment': list(MOMENT_NAMES),
        'low': [intervals[name][0] for name in MOMENT_NAMES],
        'high': [intervals[name][1] for name in MOMENT_NAMES],
        'data': data,
    })
