"""
Monte Carlo Replications

Replication k runs with derive_seed(master_seed, k). Work is shipped to a
WorkerPool; results come back in replication order regardless of workers.
"""

import logging
from typing import List, Optional, Sequence, Tuple

from ..models.params import ModelParams
from ..parallel import WorkerPool
from .seeds import derive_seed
from .simulation import SimulationResult, run_simulation


logger = logging.getLogger(__name__)


def replication_seeds(master_seed: int, count: int) -> List[int]:
    """Seeds of replications 0..count-1"""
    return [derive_seed(master_seed, k) for k in range(count)]


def _simulate_task(task: Tuple[ModelParams, int]) -> SimulationResult:
    params, seed = task
    return run_simulation(params, seed)


def simulate_many(
    params: ModelParams,
    seeds: Sequence[int],
    pool: Optional[WorkerPool] = None,
) -> List[SimulationResult]:
    """One simulation per seed, in seed order"""
    pool = pool or WorkerPool(max_workers=1)
    return pool.map(_simulate_task, [(params, int(seed)) for seed in seeds])


def run_replications(
    params: ModelParams,
    master_seed: int,
    I: int,
    pool: Optional[WorkerPool] = None,
) -> List[SimulationResult]:
    """
    Run I independent replications

    Args:
        params: Parameter set shared by all replications
        master_seed: Seed the replication seeds derive from
        I: Number of replications (>= 1)
        pool: Worker pool (default: inline)

    Returns:
        Results ordered by replication index

    Raises:
        ValueError: If I < 1
    """
    if I < 1:
        raise ValueError(f"I must be >= 1 (got {I})")
    results = simulate_many(params, replication_seeds(master_seed, I), pool)
    logger.debug(f"Completed {I} replications (master_seed={master_seed})", extra={'count': I})
    return results
