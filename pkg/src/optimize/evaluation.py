"""
Objective Evaluation Helpers

Optimizers accept any callable `f(theta) -> float`. Calibration objectives
additionally take a `replications` keyword and may offer
`evaluate_batch(points, replications)` for parallel evaluation; for plain
callables the replication count is ignored.
"""

import inspect
from functools import lru_cache
from typing import Callable, List, Optional, Sequence

import numpy as np


Objective = Callable[..., float]


def accepts_replications(objective: Objective) -> bool:
    """True when `objective` takes a `replications` keyword"""
    target = objective if inspect.isroutine(objective) else type(objective).__call__
    return _signature_accepts(target)


@lru_cache(maxsize=128)
def _signature_accepts(target) -> bool:
    try:
        parameters = inspect.signature(target).parameters.values()
    except (TypeError, ValueError):
        return False
    return any(
        p.name == 'replications' or p.kind is inspect.Parameter.VAR_KEYWORD
        for p in parameters
    )


def evaluate_one(objective: Objective, theta: np.ndarray, replications: Optional[int] = None) -> float:
    if replications is None or not accepts_replications(objective):
        return float(objective(theta))
    return float(objective(theta, replications=replications))


def evaluate_many(
    objective: Objective,
    points: Sequence[np.ndarray],
    replications: Optional[int] = None,
) -> np.ndarray:
    """Values at every point, in order; batched when the objective supports it"""
    points = [np.asarray(p, dtype=np.float64) for p in points]
    batch = getattr(objective, 'evaluate_batch', None)
    if batch is not None:
        values: List[float] = batch(points, replications=replications)
    else:
        values = [evaluate_one(objective, p, replications) for p in points]
    return np.asarray(values, dtype=np.float64)


class CountingObjective:
    """Objective proxy counting evaluations"""

    def __init__(self, objective: Objective):
        self.objective = objective
        self.count = 0
        if hasattr(objective, 'evaluate_batch'):
            self.evaluate_batch = self._evaluate_batch

    def __call__(self, theta, replications: Optional[int] = None) -> float:
        self.count += 1
        return evaluate_one(self.objective, theta, replications)

    def _evaluate_batch(self, points, replications: Optional[int] = None):
        self.count += len(points)
        return self.objective.evaluate_batch(points, replications=replications)
