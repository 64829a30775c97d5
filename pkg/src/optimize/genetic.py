"""
Simple Genetic Algorithm

Generational GA over real-valued chromosomes: rank-linear proportional
selection with replacement, blend crossover, Gaussian mutation and
elitism. Fitness of a whole generation is evaluated as one batch so a
parallel objective can spread it over workers.
"""

import logging
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..metrics import record_optimizer_iteration
from .evaluation import CountingObjective, Objective, evaluate_many
from .results import OptimizationResult
from .space import FreeParameterSpace


logger = logging.getLogger(__name__)


class GASettings(BaseModel):
    """Genetic operator settings"""

    model_config = ConfigDict(frozen=True)

    crossover_probability: float = Field(default=0.8, ge=0, le=1)
    mutation_probability: float = Field(default=0.01, ge=0, le=1)
    mutation_scale: float = Field(default=0.1, gt=0, description="Fraction of bound width")
    elite_count: int = Field(default=2, ge=0)
    replications: Optional[int] = Field(default=5, ge=1)


@dataclass
class Population:
    """Chromosomes with cached fitness (objective values, lower is better)"""
    chromosomes: np.ndarray
    fitness: np.ndarray
    generation: int = 0

    @property
    def size(self) -> int:
        return self.chromosomes.shape[0]

    @property
    def best_index(self) -> int:
        return int(np.argmin(self.fitness))

    @property
    def best_value(self) -> float:
        return float(self.fitness[self.best_index])

    @property
    def mean_value(self) -> float:
        finite = self.fitness[np.isfinite(self.fitness)]
        return float(finite.mean()) if finite.size else float('inf')


def selection_probabilities(fitness: np.ndarray) -> np.ndarray:
    """
    Rank-linear selection weights for minimization

    The best chromosome gets weight 2, the worst 0, linear in between;
    ties keep their order in the population.
    """
    n = fitness.size
    if n == 1:
        return np.ones(1)
    ranks = np.empty(n, dtype=np.int64)
    ranks[np.argsort(fitness, kind='stable')] = np.arange(n)
    weights = 2.0 * (n - 1 - ranks) / (n - 1)
    return weights / weights.sum()


def blend_crossover(
    a: np.ndarray,
    b: np.ndarray,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray]:
    """Whole-arithmetic crossover with weight beta ~ U(0, 1)"""
    beta = rng.uniform()
    return beta * a + (1 - beta) * b, (1 - beta) * a + beta * b


def gaussian_mutation(
    chromosome: np.ndarray,
    space: FreeParameterSpace,
    probability: float,
    scale: float,
    rng: np.random.Generator,
) -> np.ndarray:
    """Perturb each gene with probability `probability`, clamped to bounds"""
    mask = rng.random(chromosome.size) < probability
    if not mask.any():
        return chromosome
    mutated = chromosome.copy()
    mutated[mask] += rng.normal(0.0, scale * space.widths[mask])
    return space.clamp(mutated)


def next_generation(
    population: Population,
    objective: Objective,
    space: FreeParameterSpace,
    settings: GASettings,
    rng: np.random.Generator,
) -> Population:
    """Selection, crossover, mutation and elitism for one generation"""
    n = population.size
    elite_count = min(settings.elite_count, n)
    order = np.argsort(population.fitness, kind='stable')
    elites = population.chromosomes[order[:elite_count]].copy()
    elite_fitness = population.fitness[order[:elite_count]].copy()

    n_children = n - elite_count
    n_parents = n_children + (n_children % 2)
    probs = selection_probabilities(population.fitness)
    parents = population.chromosomes[rng.choice(n, size=n_parents, replace=True, p=probs)]

    children = []
    for i in range(0, n_parents, 2):
        a, b = parents[i].copy(), parents[i + 1].copy()
        if rng.random() < settings.crossover_probability:
            a, b = blend_crossover(a, b, rng)
        children.append(a)
        children.append(b)
    children = [
        gaussian_mutation(c, space, settings.mutation_probability, settings.mutation_scale, rng)
        for c in children[:n_children]
    ]

    child_fitness = evaluate_many(objective, children, settings.replications) if children else np.empty(0)
    chromosomes = np.vstack([elites] + ([np.array(children)] if children else []))
    fitness = np.concatenate([elite_fitness, child_fitness])
    return Population(chromosomes, fitness, population.generation + 1)


def ga_run(
    objective: Objective,
    space: FreeParameterSpace,
    population_size: int = 100,
    generations: int = 100,
    rng: Optional[np.random.Generator] = None,
    settings: Optional[GASettings] = None,
    initial: Optional[np.ndarray] = None,
    seed: Optional[int] = None,
) -> OptimizationResult:
    """
    Minimize `objective` over `space` with the genetic algorithm

    Args:
        objective: f(theta, replications=...) or plain f(theta)
        space: Free-parameter bounds
        population_size: Chromosomes per generation
        generations: Generations after the initial population
        rng: Generator for initialization and genetic operators
        settings: Operator settings
        initial: Starting population (default: random)
        seed: Recorded on the result

    Returns:
        OptimizationResult with the best-ever chromosome; `trace` holds the
        best-ever value and `mean_trace` the population mean per generation
    """
    if population_size < 2:
        raise ValueError(f"population_size must be >= 2 (got {population_size})")
    rng = rng if rng is not None else np.random.default_rng(seed)
    settings = settings or GASettings()
    started = time.perf_counter()
    calls = CountingObjective(objective)

    if initial is None:
        chromosomes = np.array([space.sample(rng) for _ in range(population_size)])
    else:
        chromosomes = np.array([space.clamp(c) for c in np.asarray(initial, dtype=np.float64)])
        if chromosomes.shape[0] != population_size:
            raise ValueError(
                f"initial population has {chromosomes.shape[0]} chromosomes, expected {population_size}"
            )
    population = Population(chromosomes, evaluate_many(calls, chromosomes, settings.replications))

    best_value = population.best_value
    best_theta = population.chromosomes[population.best_index].copy()
    trace, mean_trace = [], []
    logger.info(
        f"GA start: population={population_size}, generations={generations}",
        extra={'objective': best_value}
    )

    for _ in range(generations):
        population = next_generation(population, calls, space, settings, rng)
        if population.best_value < best_value:
            best_value = population.best_value
            best_theta = population.chromosomes[population.best_index].copy()
        trace.append(best_value)
        mean_trace.append(population.mean_value)
        record_optimizer_iteration("ga")
        logger.debug(
            f"Generation {population.generation}: best={best_value:.6g}, "
            f"mean={population.mean_value:.6g}",
            extra={'generation': population.generation, 'objective': best_value}
        )

    elapsed = time.perf_counter() - started
    logger.info(
        f"GA finished: best_f={best_value:.6g} after {calls.count} evaluations",
        extra={'objective': best_value, 'elapsed_s': round(elapsed, 3)}
    )
    return OptimizationResult(
        method="ga",
        free_params=space.names,
        best_theta=space.as_dict(best_theta),
        best_f=best_value,
        iterations=generations,
        trace=trace,
        seed=seed,
        wall_time_s=elapsed,
        mean_trace=mean_trace,
        evaluations=calls.count,
    )
