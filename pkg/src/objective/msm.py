"""
Simulated-Moments Objective

f(theta) = G(theta)^T W G(theta), where G is the mean over I replications
of the simulated moment vector minus the estimated moments of the
reference series. Replication k at theta uses the seed
derive_seed(master_seed, hash(theta), k), so repeated evaluation of the
same point inside one run sees the same random numbers.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Union

import numpy as np

from ..engine.replications import simulate_many
from ..engine.seeds import derive_seed, hash_theta
from ..metrics import record_objective_evaluation
from ..models.errors import DegenerateSeriesError, InvalidParametersError
from ..models.params import ModelParams
from ..moments.statistics import DEFAULT_TAU_MAX, MomentVector, moment_vector
from ..optimize.space import FreeParameterSpace
from ..parallel import WorkerPool
from .weights import WeightMatrix


logger = logging.getLogger(__name__)


@dataclass
class ObjectiveSpec:
    """Everything an objective evaluation needs besides theta

    Attributes:
        reference_log_prices: Reference series
        estimated_moments: Moments of the reference series
        weights: Weight matrix
        replications: Default replications per evaluation
        base_params: Template for the non-free parameters
        space: Free parameters and their bounds
        tau_max: Largest GHE lag
    """
    reference_log_prices: np.ndarray
    estimated_moments: MomentVector
    weights: WeightMatrix
    replications: int
    base_params: ModelParams
    space: FreeParameterSpace
    tau_max: int = DEFAULT_TAU_MAX
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.reference_log_prices = np.asarray(self.reference_log_prices, dtype=np.float64)
        if self.replications < 1:
            raise InvalidParametersError("replications", f"must be >= 1 (got {self.replications})")
        if self.weights.k != len(self.estimated_moments.as_array()):
            raise InvalidParametersError(
                "weights", f"expected a {len(self.estimated_moments.as_array())}x"
                f"{len(self.estimated_moments.as_array())} matrix, got k={self.weights.k}"
            )
        self.space.validate_against(ModelParams)

    def params_for(self, theta: Sequence[float]) -> ModelParams:
        """Base parameters with theta (clamped, rounded) substituted"""
        return self.space.apply(self.base_params, theta)


def anchor_params(base_params: ModelParams, reference_log_prices: Sequence[float]) -> ModelParams:
    """
    Calibration-mode parameters: T is the reference length, P0 = F0 the
    first reference price and P1 the second
    """
    reference = np.asarray(reference_log_prices, dtype=np.float64)
    if reference.size < 2:
        raise InvalidParametersError("reference_log_prices", "needs at least 2 observations")
    first, second = float(np.exp(reference[0])), float(np.exp(reference[1]))
    return base_params.with_updates(T=reference.size, P0=first, F0=first, P1=second)


def build_objective_spec(
    reference_log_prices: Sequence[float],
    base_params: ModelParams,
    free: Union[FreeParameterSpace, Sequence[str]],
    weights: WeightMatrix,
    replications: int = 5,
    anchor_prices: bool = True,
    tau_max: int = DEFAULT_TAU_MAX,
) -> ObjectiveSpec:
    """
    Objective spec in calibration mode

    With `anchor_prices`, the simulated horizon T equals the reference
    length, P0 = F0 is the first reference price and P1 the second.

    Args:
        reference_log_prices: Reference log prices (length >= 5 * tau_max)
        base_params: Values of the fixed parameters
        free: Free-parameter space, or names with default bounds
        weights: Weight matrix
        replications: Replications per evaluation
        anchor_prices: Anchor T, P0, P1, F0 to the reference series
        tau_max: Largest GHE lag

    Returns:
        ObjectiveSpec
    """
    reference = np.asarray(reference_log_prices, dtype=np.float64)
    if reference.size < 2:
        raise InvalidParametersError("reference_log_prices", "needs at least 2 observations")
    space = free if isinstance(free, FreeParameterSpace) else FreeParameterSpace.from_names(free)

    if anchor_prices:
        base_params = anchor_params(base_params, reference)

    estimated = moment_vector(reference, reference, tau_max)
    logger.info(
        f"Objective spec: {space.names} free, T={base_params.T}, I={replications}",
        extra={'count': len(space.names)}
    )
    return ObjectiveSpec(
        reference_log_prices=reference,
        estimated_moments=estimated,
        weights=weights,
        replications=replications,
        base_params=base_params,
        space=space,
        tau_max=tau_max,
    )


def evaluation_seeds(master_seed: int, theta: Sequence[float], replications: int) -> List[int]:
    """Replication seeds of one evaluation point"""
    key = hash_theta(theta)
    return [derive_seed(master_seed, key, k) for k in range(replications)]


def simulated_moments(
    spec: ObjectiveSpec,
    theta: Sequence[float],
    master_seed: int,
    replications: Optional[int] = None,
    pool: Optional[WorkerPool] = None,
) -> np.ndarray:
    """Moment vectors of each replication at theta, shape (I, 5)"""
    reps = replications or spec.replications
    point = spec.space.round(theta)
    params = spec.params_for(point)
    results = simulate_many(params, evaluation_seeds(master_seed, point, reps), pool)
    return np.array([
        moment_vector(r.log_prices, spec.reference_log_prices, spec.tau_max).as_array()
        for r in results
    ])


def g_hat(
    spec: ObjectiveSpec,
    theta: Sequence[float],
    master_seed: int,
    replications: Optional[int] = None,
    pool: Optional[WorkerPool] = None,
) -> np.ndarray:
    """Mean simulated moments minus estimated moments"""
    moments = simulated_moments(spec, theta, master_seed, replications, pool)
    return moments.mean(axis=0) - spec.estimated_moments.as_array()


def objective(
    spec: ObjectiveSpec,
    theta: Sequence[float],
    master_seed: int,
    replications: Optional[int] = None,
    pool: Optional[WorkerPool] = None,
) -> float:
    """
    G(theta)^T W G(theta), clamped at 0

    Raises:
        DegenerateSeriesError: A simulated path has undefined moments
    """
    g = g_hat(spec, theta, master_seed, replications, pool)
    value = max(spec.weights.quadratic_form(g), 0.0)
    record_objective_evaluation(replications or spec.replications)
    return value


def _evaluate_task(task) -> float:
    calibration, theta, replications = task
    return calibration(theta, replications=replications)


class CalibrationObjective:
    """
    Optimizer-facing objective bound to a spec and a master seed

    Points where a simulated path has undefined moments (for example a
    price path that never moves) score +inf so the optimizer moves away.

    Usage:
        f = CalibrationObjective(spec, master_seed=7, pool=WorkerPool(4))
        value = f(theta)
        values = f.evaluate_batch(points, replications=3)
    """

    def __init__(self, spec: ObjectiveSpec, master_seed: int, pool: Optional[WorkerPool] = None):
        self.spec = spec
        self.master_seed = int(master_seed)
        self.pool = pool or WorkerPool(max_workers=1)
        self.evaluations = 0

    def __call__(self, theta: Sequence[float], replications: Optional[int] = None) -> float:
        self.evaluations += 1
        try:
            value = objective(self.spec, theta, self.master_seed, replications, self.pool)
        except DegenerateSeriesError as e:
            logger.warning(
                f"Objective undefined at theta={np.round(np.asarray(theta), 6).tolist()}: {e}",
                extra={'theta': np.asarray(theta).tolist()}
            )
            return float('inf')
        logger.debug(
            f"f(theta)={value:.6g}",
            extra={'theta': np.asarray(theta).tolist(), 'objective': value}
        )
        return value

    def evaluate_batch(
        self,
        points: Sequence[Sequence[float]],
        replications: Optional[int] = None,
    ) -> List[float]:
        """Evaluate many points, spreading them over the pool"""
        if self.pool.max_workers == 1 or len(points) <= 1:
            return [self(p, replications) for p in points]
        # workers count on their own copies
        self.evaluations += len(points)
        tasks = [(self, np.asarray(p, dtype=np.float64), replications) for p in points]
        return self.pool.map(_evaluate_task, tasks)

    def __getstate__(self):
        state = self.__dict__.copy()
        state['pool'] = None
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)
        self.pool = WorkerPool(max_workers=1)
