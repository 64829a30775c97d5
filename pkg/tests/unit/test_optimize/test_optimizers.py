"""
Unit tests for the Nelder-Mead/threshold-accepting and genetic optimizers
"""

import numpy as np
import pytest
from pydantic import ValidationError

from src.optimize import (
    FreeParameter,
    FreeParameterSpace,
    GASettings,
    NMKind,
    OptimizationResult,
    Population,
    Simplex,
    ThresholdSchedule,
    confidence_intervals,
    ga_run,
    nm_step,
    nm_ta_run,
    nm_transform,
    selection_probabilities,
    ta_shift,
)
from src.optimize.evaluation import CountingObjective, accepts_replications, evaluate_many
from src.optimize.genetic import blend_crossover, gaussian_mutation, next_generation


def quadratic(theta):
    x, y = theta
    return (x - 1.0) ** 2 + 2.0 * (y + 0.5) ** 2


def sphere(theta):
    return float(np.sum(np.asarray(theta) ** 2))


def box(dimension, low=-5.0, high=5.0):
    return FreeParameterSpace(
        FreeParameter(name=f"x{i}", lower=low, upper=high) for i in range(dimension)
    )


@pytest.mark.unit
class TestSimplex:
    """Simplex record and Nelder-Mead operations"""

    def test_vertex_count_checked(self):
        with pytest.raises(ValueError, match="3 vertices"):
            Simplex(np.zeros((2, 2)))

    def test_unevaluated_values_are_nan(self):
        simplex = Simplex(np.zeros((3, 2)))
        assert not simplex.evaluated

    def test_transforms(self):
        """Should place candidates on the line from the worst vertex through the centroid"""
        simplex = Simplex([[0.0, 0.0], [2.0, 0.0], [0.0, 2.0]], [0.0, 1.0, 2.0])
        centroid, worst = np.array([1.0, 0.0]), np.array([0.0, 2.0])
        np.testing.assert_allclose(nm_transform(simplex, NMKind.REFLECT), 2 * centroid - worst)
        np.testing.assert_allclose(nm_transform(simplex, NMKind.EXPAND), 3 * centroid - 2 * worst)
        np.testing.assert_allclose(nm_transform(simplex, NMKind.OUT_CONTRACT), 1.5 * centroid - 0.5 * worst)
        np.testing.assert_allclose(nm_transform(simplex, NMKind.IN_CONTRACT), 0.5 * centroid + 0.5 * worst)

    def test_nm_step_converges_on_quadratic(self):
        """Should reach the minimizer within 1e-6 in at most 200 steps"""
        simplex = Simplex([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]).evaluate(quadratic)
        for _ in range(200):
            simplex = nm_step(simplex, quadratic)
            if np.linalg.norm(simplex.best_vertex - [1.0, -0.5]) < 1e-6:
                break
        assert np.linalg.norm(simplex.best_vertex - [1.0, -0.5]) < 1e-6

    def test_nm_step_never_worsens_best(self):
        simplex = Simplex([[3.0, 3.0], [4.0, 3.0], [3.0, 4.0]]).evaluate(quadratic)
        for _ in range(30):
            before = simplex.best_value
            simplex = nm_step(simplex, quadratic)
            assert simplex.best_value <= before

    def test_nm_step_respects_bounds(self):
        space = box(2, low=2.0, high=5.0)
        simplex = Simplex([[3.0, 3.0], [4.0, 3.0], [3.0, 4.0]]).evaluate(quadratic)
        for _ in range(50):
            simplex = nm_step(simplex, quadratic, space)
        assert (simplex.vertices >= 2.0).all() and (simplex.vertices <= 5.0).all()

    def test_ta_shift_moves_one_coordinate(self):
        """Should shift a single coordinate of every vertex and drop the values"""
        simplex = Simplex([[1.0, 2.0], [2.0, 2.0], [1.0, 3.0]], [0.0, 1.0, 2.0])
        shifted = ta_shift(simplex, np.random.default_rng(4))
        changed = ~np.isclose(shifted.vertices, simplex.vertices).all(axis=0)
        assert changed.sum() <= 1
        assert not shifted.evaluated


@pytest.mark.unit
class TestThresholdSchedule:
    """Threshold-accepting schedule validation"""

    def test_defaults(self):
        schedule = ThresholdSchedule()
        assert schedule.rounds == 3
        assert schedule.thresholds[-1] == 0

    def test_increasing_thresholds_rejected(self):
        with pytest.raises(ValidationError):
            ThresholdSchedule(thresholds=(0.1, 0.2, 0.0), replications=(1, 1, 1))

    def test_final_threshold_must_be_zero(self):
        with pytest.raises(ValidationError):
            ThresholdSchedule(thresholds=(0.2, 0.1), replications=(1, 1))

    def test_round_lengths_must_match(self):
        with pytest.raises(ValidationError):
            ThresholdSchedule(thresholds=(0.1, 0.0), replications=(1, 2, 3))


@pytest.mark.unit
class TestNMTARun:
    """Full Nelder-Mead run with threshold accepting"""

    def test_minimizes_quadratic(self):
        """Should approach the minimizer with a non-increasing trace"""
        space = box(2)
        schedule = ThresholdSchedule(steps=2, thresholds=(0.1, 0.0), replications=(1, 1), ta_probability=0.2)
        result = nm_ta_run(
            quadratic, space, iterations=150, rng=np.random.default_rng(3),
            schedule=schedule, simplex_replications=None, seed=3,
        )
        assert result.method == "nm_ta"
        assert result.best_f < 1e-4
        assert len(result.trace) == 150
        assert all(b <= a for a, b in zip(result.trace, result.trace[1:]))
        assert result.best_f == pytest.approx(quadratic(result.theta_vector()))
        assert result.evaluations > 150

    def test_same_rng_same_result(self):
        space = box(2)
        a = nm_ta_run(quadratic, space, iterations=40, rng=np.random.default_rng(1), simplex_replications=None)
        b = nm_ta_run(quadratic, space, iterations=40, rng=np.random.default_rng(1), simplex_replications=None)
        assert a.best_theta == b.best_theta
        assert a.trace == b.trace

    def test_simplex_rescored_after_threshold_phase(self):
        """Should re-evaluate the simplex with the Nelder-Mead replications after a TA phase"""
        seen = []

        def objective(theta, replications=None):
            seen.append(replications)
            return sphere(theta)

        schedule = ThresholdSchedule(steps=1, thresholds=(0.1, 0.0), replications=(2, 3), ta_probability=1.0)
        nm_ta_run(objective, box(2), iterations=1, rng=np.random.default_rng(2),
                  schedule=schedule, simplex_replications=7)

        assert seen[:3] == [7, 7, 7]
        assert seen[3:6] == [2, 2, 2]
        assert seen[6:9] == [3, 3, 3]
        assert seen[9:] == [7, 7, 7]

    def test_initial_vertices_clamped(self):
        space = box(2, low=0.0, high=1.0)
        result = nm_ta_run(
            quadratic, space, initial=[[9.0, 9.0], [0.5, 0.5], [0.2, 0.8]],
            iterations=5, rng=np.random.default_rng(0), simplex_replications=None,
        )
        assert all(0.0 <= v <= 1.0 for v in result.best_theta.values())


@pytest.mark.unit
class TestGeneticAlgorithm:
    """Generational GA"""

    def test_selection_probabilities(self):
        """Should weight by rank, best 2 and worst 0, summing to 1"""
        probs = selection_probabilities(np.array([3.0, 1.0, 2.0, 5.0, 4.0]))
        np.testing.assert_allclose(probs, np.array([1.0, 2.0, 1.5, 0.0, 0.5]) / 5.0)

    def test_single_chromosome_selected(self):
        assert selection_probabilities(np.array([7.0])).tolist() == [1.0]

    def test_blend_crossover_preserves_sum(self):
        a, b = np.array([1.0, 2.0]), np.array([3.0, -2.0])
        child_a, child_b = blend_crossover(a, b, np.random.default_rng(0))
        np.testing.assert_allclose(child_a + child_b, a + b)

    def test_mutation_stays_in_bounds(self):
        space = box(3, low=0.0, high=1.0)
        rng = np.random.default_rng(0)
        for _ in range(100):
            mutated = gaussian_mutation(np.full(3, 0.99), space, 1.0, 0.5, rng)
            assert (mutated >= 0.0).all() and (mutated <= 1.0).all()

    def test_zero_mutation_probability_is_identity(self):
        chromosome = np.array([0.3, 0.4])
        assert gaussian_mutation(chromosome, box(2), 0.0, 0.5, np.random.default_rng(0)) is chromosome

    def test_elitism_keeps_best(self):
        """Should never lose the best chromosome between generations"""
        space = box(4)
        settings = GASettings(mutation_probability=0.2, mutation_scale=0.05, replications=None)
        rng = np.random.default_rng(5)
        chromosomes = np.array([space.sample(rng) for _ in range(20)])
        population = Population(chromosomes, evaluate_many(sphere, chromosomes))
        for _ in range(30):
            following = next_generation(population, sphere, space, settings, rng)
            assert following.best_value <= population.best_value
            assert following.size == population.size
            population = following

    def test_selection_only_without_operators(self):
        """Should only resample existing chromosomes when p_c = p_m = 0"""
        space = box(3)
        settings = GASettings(crossover_probability=0.0, mutation_probability=0.0, replications=None)
        rng = np.random.default_rng(13)
        chromosomes = np.array([space.sample(rng) for _ in range(12)])
        original = {tuple(c) for c in chromosomes}
        population = Population(chromosomes, evaluate_many(sphere, chromosomes))
        for _ in range(5):
            population = next_generation(population, sphere, space, settings, rng)
            assert {tuple(c) for c in population.chromosomes} <= original
            np.testing.assert_allclose(population.fitness, [sphere(c) for c in population.chromosomes])

    def test_improves_sphere(self):
        """Should improve the best value on a 4-D sphere by at least 100x"""
        space = box(4)
        settings = GASettings(mutation_probability=0.2, mutation_scale=0.02, replications=None)
        rng = np.random.default_rng(11)
        initial = np.array([space.sample(rng) for _ in range(60)])
        initial_best = min(sphere(c) for c in initial)

        result = ga_run(sphere, space, population_size=60, generations=100,
                        rng=rng, settings=settings, initial=initial, seed=11)

        assert result.method == "ga"
        assert result.best_f * 100 <= initial_best
        assert len(result.trace) == len(result.mean_trace) == 100
        assert all(b <= a for a, b in zip(result.trace, result.trace[1:]))

    def test_population_size_checked(self):
        with pytest.raises(ValueError):
            ga_run(sphere, box(2), population_size=1)
        with pytest.raises(ValueError, match="expected 4"):
            ga_run(sphere, box(2), population_size=4, initial=np.zeros((3, 2)))


@pytest.mark.unit
class TestEvaluationHelpers:
    """Objective adapters"""

    def test_accepts_replications(self):
        def with_keyword(theta, replications=None):
            return 0.0

        assert accepts_replications(with_keyword)
        assert not accepts_replications(sphere)

    def test_replications_passed_only_when_accepted(self):
        seen = []

        def objective(theta, replications=None):
            seen.append(replications)
            return 0.0

        evaluate_many(objective, [np.zeros(2)], replications=3)
        evaluate_many(sphere, [np.zeros(2)], replications=3)
        assert seen == [3]

    def test_counting_objective(self):
        calls = CountingObjective(sphere)
        evaluate_many(calls, [np.zeros(2), np.ones(2)])
        assert calls.count == 2


@pytest.mark.unit
class TestResults:
    """Result record and repeated-run summary"""

    def test_result_file(self, tmp_path):
        """Should write the documented keys and read back the same record"""
        result = OptimizationResult(
            method="ga", free_params=["delta", "N_L"], best_theta={"delta": 1e-4, "N_L": 5000},
            best_f=0.25, iterations=3, trace=[1.0, 0.5, 0.25], seed=7, wall_time_s=1.5,
            mean_trace=[2.0, 1.0, 0.5], evaluations=40,
        )
        path = tmp_path / "result.json"
        result.write(path)

        restored = OptimizationResult.read(path)
        assert restored == result
        assert restored.theta_vector() == [1e-4, 5000]
        assert {"method", "free_params", "best_theta", "best_f", "iterations",
                "trace", "seed", "wall_time_s"} <= set(result.to_dict())

    def test_confidence_intervals_from_array(self):
        """Should give mean +/- t* s / sqrt(n)"""
        intervals = confidence_intervals(np.array([[1.0], [3.0]]), names=["delta"])
        delta = intervals["delta"]
        assert delta["mean"] == pytest.approx(2.0)
        assert delta["std_error"] == pytest.approx(1.0)
        assert delta["high"] - delta["mean"] == pytest.approx(12.7062047, rel=1e-6)
        assert delta["mean"] - delta["low"] == pytest.approx(delta["high"] - delta["mean"])

    def test_confidence_intervals_from_results(self):
        results = [
            OptimizationResult("ga", ["delta"], {"delta": v}, 0.0, 1, [0.0]) for v in (1.0, 2.0, 3.0)
        ]
        intervals = confidence_intervals(results)
        assert intervals["delta"]["low"] < 2.0 < intervals["delta"]["high"]

    def test_confidence_intervals_need_two_runs(self):
        with pytest.raises(ValueError):
            confidence_intervals(np.array([[1.0]]))
