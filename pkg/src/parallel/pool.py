"""
Worker Pool

Bounds the number of concurrent simulations / objective evaluations.
The master submits a batch, workers evaluate, results come back in
submission order, so output never depends on `max_workers`.
"""

import logging
import os
from concurrent.futures import Executor, ProcessPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar


logger = logging.getLogger(__name__)

T = TypeVar('T')
R = TypeVar('R')


def default_workers() -> int:
    """Available parallelism of this process"""
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:
        return os.cpu_count() or 1


class WorkerPool:
    """
    Bounded master-worker pool

    With max_workers == 1 work runs inline in the calling process, which
    keeps tests and small runs free of process start-up cost. Functions
    passed to `map` must be picklable (module-level) when max_workers > 1.

    Usage:
        with WorkerPool(max_workers=4) as pool:
            results = pool.map(run_simulation_task, tasks)
    """

    def __init__(self, max_workers: Optional[int] = None):
        """
        Initialize worker pool

        Args:
            max_workers: Maximum concurrent workers (default: available CPUs)
        """
        if max_workers is None:
            max_workers = default_workers()
        if max_workers < 1:
            raise ValueError("max_workers must be >= 1")

        self.max_workers = max_workers
        self._executor: Optional[Executor] = None
        self._total_submitted = 0
        self._total_completed = 0

        logger.debug(f"Worker pool initialized: max_workers={max_workers}")

    def _get_executor(self) -> Executor:
        if self._executor is None:
            self._executor = ProcessPoolExecutor(max_workers=self.max_workers)
        return self._executor

    def map(self, fn: Callable[[T], R], items: Iterable[T]) -> List[R]:
        """
        Evaluate `fn` on every item, preserving input order

        Args:
            fn: Function of one argument
            items: Work items

        Returns:
            Results in the same order as `items`
        """
        items = list(items)
        self._total_submitted += len(items)

        if self.max_workers == 1 or len(items) <= 1:
            results = [fn(item) for item in items]
        else:
            chunksize = max(1, len(items) // (4 * self.max_workers))
            results = list(self._get_executor().map(fn, items, chunksize=chunksize))

        self._total_completed += len(results)
        return results

    def get_stats(self) -> dict:
        """
        Get pool statistics

        Returns:
            Dict with max_workers, total_submitted, total_completed
        """
        return {
            'max_workers': self.max_workers,
            'total_submitted': self._total_submitted,
            'total_completed': self._total_completed,
        }

    def shutdown(self) -> None:
        if self._executor is not None:
            self._executor.shutdown(wait=True)
            self._executor = None

    def __enter__(self) -> 'WorkerPool':
        return self

    def __exit__(self, *exc) -> None:
        self.shutdown()

    # Process pools are not picklable; objects holding a pool (objective
    # functions) are shipped to workers without it.
    def __getstate__(self):
        return {'max_workers': self.max_workers}

    def __setstate__(self, state):
        self.__init__(max_workers=1)
