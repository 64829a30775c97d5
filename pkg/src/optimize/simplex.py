"""
Nelder-Mead Simplex Operations

Vertex transforms, one Nelder-Mead step and the threshold-accepting shift
that moves a whole simplex along one coordinate.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from .evaluation import Objective, evaluate_many, evaluate_one
from .space import FreeParameterSpace


logger = logging.getLogger(__name__)


class NMKind(str, Enum):
    """Nelder-Mead candidate kinds"""
    REFLECT = "reflect"
    EXPAND = "expand"
    OUT_CONTRACT = "out_contract"
    IN_CONTRACT = "in_contract"


@dataclass(frozen=True)
class NMCoefficients:
    """Reflection, expansion, contraction and shrink coefficients"""
    rho: float = 1.0
    xi: float = 2.0
    psi: float = 0.5
    sigma: float = 0.5


DEFAULT_COEFFICIENTS = NMCoefficients()


@dataclass
class Simplex:
    """n + 1 vertices and their cached objective values

    A freshly shifted simplex carries NaN values until it is evaluated.
    """
    vertices: np.ndarray
    values: np.ndarray = field(default=None)

    def __post_init__(self):
        self.vertices = np.atleast_2d(np.asarray(self.vertices, dtype=np.float64))
        n_vertices, n = self.vertices.shape
        if n_vertices != n + 1:
            raise ValueError(f"simplex in {n} dimensions needs {n + 1} vertices, got {n_vertices}")
        if self.values is None:
            self.values = np.full(n_vertices, np.nan)
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.shape != (n_vertices,):
            raise ValueError(f"expected {n_vertices} values, got shape {self.values.shape}")

    @property
    def dimension(self) -> int:
        return self.vertices.shape[1]

    @property
    def evaluated(self) -> bool:
        return not np.isnan(self.values).any()

    def sorted(self) -> 'Simplex':
        """Copy with vertices ordered best first (stable for ties)"""
        order = np.argsort(self.values, kind='stable')
        return Simplex(self.vertices[order].copy(), self.values[order].copy())

    @property
    def best_index(self) -> int:
        return int(np.argmin(self.values))

    @property
    def best_vertex(self) -> np.ndarray:
        return self.vertices[self.best_index]

    @property
    def best_value(self) -> float:
        return float(self.values[self.best_index])

    def centroid(self) -> np.ndarray:
        """Mean of the n best vertices"""
        ordered = self.sorted()
        return ordered.vertices[:-1].mean(axis=0)

    def diameter(self) -> float:
        diffs = self.vertices[:, None, :] - self.vertices[None, :, :]
        return float(np.sqrt((diffs ** 2).sum(axis=-1)).max())

    def evaluate(self, objective: Objective, replications: Optional[int] = None) -> 'Simplex':
        """Copy with every vertex (re)evaluated"""
        return Simplex(self.vertices.copy(), evaluate_many(objective, self.vertices, replications))


def nm_transform(
    simplex: Simplex,
    kind: NMKind,
    coefficients: NMCoefficients = DEFAULT_COEFFICIENTS,
) -> np.ndarray:
    """
    Candidate point along the line from the worst vertex through the centroid

    Args:
        simplex: Evaluated simplex
        kind: Which candidate
        coefficients: rho, xi, psi

    Returns:
        Candidate point (unclamped)
    """
    ordered = simplex.sorted()
    centroid = ordered.vertices[:-1].mean(axis=0)
    worst = ordered.vertices[-1]
    rho, xi, psi = coefficients.rho, coefficients.xi, coefficients.psi

    if kind is NMKind.REFLECT:
        return (1 + rho) * centroid - rho * worst
    if kind is NMKind.EXPAND:
        return (1 + rho * xi) * centroid - rho * xi * worst
    if kind is NMKind.OUT_CONTRACT:
        return (1 + psi * rho) * centroid - psi * rho * worst
    if kind is NMKind.IN_CONTRACT:
        return (1 - psi * rho) * centroid + psi * rho * worst
    raise ValueError(f"Unknown transform: {kind}")


def nm_step(
    simplex: Simplex,
    objective: Objective,
    space: Optional[FreeParameterSpace] = None,
    replications: Optional[int] = None,
    coefficients: NMCoefficients = DEFAULT_COEFFICIENTS,
) -> Simplex:
    """
    One Nelder-Mead iteration

    Reflect; expand if the reflection beats the best vertex; contract
    outside or inside when it does not beat the second worst; shrink toward
    the best vertex when the contraction fails. Candidates are clamped into
    `space` when given.

    Args:
        simplex: Evaluated simplex
        objective: f(theta) (optionally with a `replications` keyword)
        space: Bounds for clamping
        replications: Passed through to the objective
        coefficients: rho, xi, psi, sigma

    Returns:
        New evaluated simplex, best vertex first
    """
    s = simplex.sorted()
    vertices, values = s.vertices.copy(), s.values.copy()
    f_best, f_second_worst, f_worst = values[0], values[-2], values[-1]

    def candidate(kind: NMKind) -> np.ndarray:
        point = nm_transform(s, kind, coefficients)
        return space.clamp(point) if space is not None else point

    def replace_worst(point: np.ndarray, value: float) -> Simplex:
        vertices[-1], values[-1] = point, value
        return Simplex(vertices, values).sorted()

    x_r = candidate(NMKind.REFLECT)
    f_r = evaluate_one(objective, x_r, replications)

    if f_best <= f_r < f_second_worst:
        return replace_worst(x_r, f_r)

    if f_r < f_best:
        x_e = candidate(NMKind.EXPAND)
        f_e = evaluate_one(objective, x_e, replications)
        if f_e < f_r:
            return replace_worst(x_e, f_e)
        return replace_worst(x_r, f_r)

    if f_r < f_worst:
        x_c = candidate(NMKind.OUT_CONTRACT)
        f_c = evaluate_one(objective, x_c, replications)
        if f_c <= f_r:
            return replace_worst(x_c, f_c)
    else:
        x_c = candidate(NMKind.IN_CONTRACT)
        f_c = evaluate_one(objective, x_c, replications)
        if f_c < f_worst:
            return replace_worst(x_c, f_c)

    # shrink toward the best vertex
    best = vertices[0]
    shrunk = best + coefficients.sigma * (vertices[1:] - best)
    if space is not None:
        shrunk = np.array([space.clamp(v) for v in shrunk])
    vertices[1:] = shrunk
    values[1:] = evaluate_many(objective, shrunk, replications)
    logger.debug("Simplex shrink")
    return Simplex(vertices, values).sorted()


def ta_shift(
    simplex: Simplex,
    rng: np.random.Generator,
    space: Optional[FreeParameterSpace] = None,
) -> Simplex:
    """
    Threshold-accepting perturbation

    Picks one coordinate uniformly, and adds mean * u (u ~ U(-0.5, 0.5)) to
    that coordinate of every vertex, where mean is the coordinate's mean
    over the vertices.

    Returns:
        Unevaluated simplex (values NaN)
    """
    index = int(rng.integers(simplex.dimension))
    u = rng.uniform(-0.5, 0.5)
    vertices = simplex.vertices.copy()
    vertices[:, index] += vertices[:, index].mean() * u
    if space is not None:
        vertices = np.array([space.clamp(v) for v in vertices])
    return Simplex(vertices)
