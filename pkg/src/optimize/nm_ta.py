"""
Nelder-Mead with Threshold Accepting

Each iteration either takes one Nelder-Mead step or, with probability
`ta_probability`, runs a threshold-accepting phase: `rounds` rounds of
`steps` random coordinate shifts, each accepted when the shifted simplex's
best value is below the current best plus the round's threshold. Later
rounds use tighter thresholds and more replications per evaluation.
The simplex a phase leaves behind is re-scored with the Nelder-Mead
replication count before the next step.
"""

import logging
import time
from typing import Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..metrics import record_optimizer_iteration
from .evaluation import CountingObjective, Objective
from .results import OptimizationResult
from .simplex import DEFAULT_COEFFICIENTS, NMCoefficients, Simplex, nm_step, ta_shift
from .space import FreeParameterSpace, initial_simplex


logger = logging.getLogger(__name__)


class ThresholdSchedule(BaseModel):
    """Threshold-accepting schedule"""

    model_config = ConfigDict(frozen=True)

    steps: int = Field(default=5, ge=1, description="Shifts per round")
    thresholds: Tuple[float, ...] = (0.2, 0.1, 0.0)
    replications: Tuple[int, ...] = (3, 4, 5)
    ta_probability: float = Field(default=0.15, ge=0, le=1)

    @model_validator(mode='after')
    def check_schedule(self) -> 'ThresholdSchedule':
        if len(self.thresholds) != len(self.replications):
            raise ValueError('thresholds and replications need one entry per round')
        if not self.thresholds:
            raise ValueError('at least one round is required')
        if any(b > a for a, b in zip(self.thresholds, self.thresholds[1:])):
            raise ValueError(f'thresholds must be non-increasing: {self.thresholds}')
        if self.thresholds[-1] != 0:
            raise ValueError('final threshold must be 0')
        if any(r < 1 for r in self.replications):
            raise ValueError('replications must be >= 1')
        return self

    @property
    def rounds(self) -> int:
        return len(self.thresholds)


class _BestTracker:
    def __init__(self):
        self.value = np.inf
        self.theta: Optional[np.ndarray] = None

    def update(self, simplex: Simplex) -> None:
        i = simplex.best_index
        if simplex.values[i] < self.value:
            self.value = float(simplex.values[i])
            self.theta = simplex.vertices[i].copy()


def threshold_accepting_phase(
    simplex: Simplex,
    objective: Objective,
    rng: np.random.Generator,
    schedule: ThresholdSchedule,
    space: Optional[FreeParameterSpace] = None,
    tracker: Optional[_BestTracker] = None,
) -> Simplex:
    """
    All rounds of threshold accepting, starting from an evaluated simplex

    Returns:
        The simplex current after the last round
    """
    current = simplex
    for tau, reps in zip(schedule.thresholds, schedule.replications):
        for _ in range(schedule.steps):
            shifted = ta_shift(current, rng, space).evaluate(objective, reps)
            if tracker is not None:
                tracker.update(shifted)
            if shifted.best_value < current.best_value + tau:
                current = shifted
    return current


def nm_ta_run(
    objective: Objective,
    space: FreeParameterSpace,
    initial: Optional[Sequence[Sequence[float]]] = None,
    iterations: int = 250,
    rng: Optional[np.random.Generator] = None,
    schedule: Optional[ThresholdSchedule] = None,
    simplex_replications: Optional[int] = 5,
    coefficients: NMCoefficients = DEFAULT_COEFFICIENTS,
    seed: Optional[int] = None,
) -> OptimizationResult:
    """
    Minimize `objective` over `space`

    Args:
        objective: f(theta, replications=...) or plain f(theta)
        space: Free-parameter bounds
        initial: Starting vertices (default: random initial simplex)
        iterations: Top-level iterations; a threshold-accepting phase
            counts as one
        rng: Generator for initialization, phase choice and shifts
        schedule: Threshold-accepting schedule
        simplex_replications: Replications for Nelder-Mead evaluations
            (None for objectives without a replications keyword)
        coefficients: Nelder-Mead coefficients
        seed: Recorded on the result

    Returns:
        OptimizationResult with the best-ever vertex and per-iteration trace
    """
    rng = rng if rng is not None else np.random.default_rng(seed)
    schedule = schedule or ThresholdSchedule()
    started = time.perf_counter()
    calls = CountingObjective(objective)

    vertices = initial if initial is not None else initial_simplex(space, rng)
    vertices = np.array([space.clamp(v) for v in np.asarray(vertices, dtype=np.float64)])
    simplex = Simplex(vertices).evaluate(calls, simplex_replications)

    tracker = _BestTracker()
    tracker.update(simplex)
    trace = []
    logger.info(
        f"NM+TA start: {space.dimension} free parameters, {iterations} iterations",
        extra={'objective': tracker.value}
    )

    for iteration in range(1, iterations + 1):
        if rng.random() < schedule.ta_probability:
            simplex = threshold_accepting_phase(simplex, calls, rng, schedule, space, tracker)
            # NM steps compare values scored with simplex_replications
            simplex = simplex.evaluate(calls, simplex_replications)
            phase = "ta"
        else:
            simplex = nm_step(simplex, calls, space, simplex_replications, coefficients)
            phase = "nm"
        tracker.update(simplex)
        trace.append(tracker.value)
        record_optimizer_iteration("nm_ta")
        logger.debug(
            f"Iteration {iteration} ({phase}): best={tracker.value:.6g}",
            extra={'iteration': iteration, 'objective': tracker.value}
        )

    elapsed = time.perf_counter() - started
    logger.info(
        f"NM+TA finished: best_f={tracker.value:.6g} after {calls.count} evaluations",
        extra={'objective': tracker.value, 'elapsed_s': round(elapsed, 3)}
    )
    return OptimizationResult(
        method="nm_ta",
        free_params=space.names,
        best_theta=space.as_dict(tracker.theta),
        best_f=tracker.value,
        iterations=iterations,
        trace=trace,
        seed=seed,
        wall_time_s=elapsed,
        evaluations=calls.count,
    )
