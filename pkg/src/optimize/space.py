"""
Free-Parameter Space

Box bounds, integer rounding and random initialization of the parameters
an optimizer moves. Optimizers work on plain float vectors; integer
parameters (N_L, N_H) are rounded only when a vector becomes a ModelParams.
"""

import logging
from typing import Iterable, List, Optional, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..models.errors import InvalidParametersError, UnknownParameterError
from ..models.params import INTEGER_PARAMETERS, ModelParams


logger = logging.getLogger(__name__)

TRADER_COUNT_BOUNDS = (100.0, 10000.0)
POSITIVE_COEFFICIENTS = frozenset({"alpha_c", "alpha_f", "delta", "lambda", "zeta"})
POSITIVE_LOWER_BOUND = 1e-6
CONTINUOUS_UPPER_BOUND = 0.1


class FreeParameter(BaseModel):
    """One calibrated parameter

    Attributes:
        name: External ModelParams name ("lambda", not "lambda_")
        lower, upper: Clamping bounds
        integer: Round to the nearest integer before simulating
        init_low, init_high: Range of random initialization
    """

    model_config = ConfigDict(frozen=True)

    name: str = Field(..., min_length=1)
    lower: float
    upper: float
    integer: bool = False
    init_low: Optional[float] = None
    init_high: Optional[float] = None

    @model_validator(mode='after')
    def check_bounds(self) -> 'FreeParameter':
        if self.lower > self.upper:
            raise ValueError(f'{self.name}: lower ({self.lower}) must be <= upper ({self.upper})')
        low = self.lower if self.init_low is None else self.init_low
        high = self.upper if self.init_high is None else self.init_high
        if low > high:
            raise ValueError(f'{self.name}: init_low ({low}) must be <= init_high ({high})')
        return self

    @property
    def init_range(self) -> tuple[float, float]:
        low = self.lower if self.init_low is None else self.init_low
        high = self.upper if self.init_high is None else self.init_high
        return low, high

    @property
    def width(self) -> float:
        return self.upper - self.lower


def default_free_parameter(name: str) -> FreeParameter:
    """
    Default bounds of a calibrated parameter

    Trader counts live in [100, 10000]; strictly positive coefficients in
    [1e-6, 0.1]; everything else in [0, 0.1]. Continuous parameters are
    initialized uniformly in (0, 0.1).

    Raises:
        UnknownParameterError: `name` is not a ModelParams field
    """
    if name not in ModelParams.field_names():
        raise UnknownParameterError(name)
    if name in ("N_L", "N_H"):
        low, high = TRADER_COUNT_BOUNDS
        return FreeParameter(name=name, lower=low, upper=high, integer=True)
    if name in INTEGER_PARAMETERS:
        raise InvalidParametersError(name, "has no default bounds; give lower/upper explicitly")
    lower = POSITIVE_LOWER_BOUND if name in POSITIVE_COEFFICIENTS else 0.0
    return FreeParameter(
        name=name,
        lower=lower,
        upper=CONTINUOUS_UPPER_BOUND,
        init_low=0.0,
        init_high=CONTINUOUS_UPPER_BOUND,
    )


class FreeParameterSpace:
    """
    Ordered set of free parameters

    Usage:
        space = FreeParameterSpace.from_names(["delta", "N_L"])
        theta = space.sample(rng)
        params = space.apply(base_params, theta)
    """

    def __init__(self, parameters: Iterable[FreeParameter]):
        self.parameters: List[FreeParameter] = list(parameters)
        if not self.parameters:
            raise InvalidParametersError("free_params", "at least one free parameter is required")
        names = self.names
        if len(set(names)) != len(names):
            duplicates = sorted({n for n in names if names.count(n) > 1})
            raise InvalidParametersError("free_params", f"duplicate names: {duplicates}")

        self.lower = np.array([p.lower for p in self.parameters])
        self.upper = np.array([p.upper for p in self.parameters])
        self.integer_mask = np.array([p.integer for p in self.parameters])

    @classmethod
    def from_names(cls, names: Sequence[str]) -> 'FreeParameterSpace':
        return cls(default_free_parameter(name) for name in names)

    @property
    def names(self) -> List[str]:
        return [p.name for p in self.parameters]

    @property
    def dimension(self) -> int:
        return len(self.parameters)

    @property
    def widths(self) -> np.ndarray:
        return self.upper - self.lower

    def clamp(self, theta: Sequence[float]) -> np.ndarray:
        """Componentwise projection into the bounds"""
        return np.clip(np.asarray(theta, dtype=np.float64), self.lower, self.upper)

    def round(self, theta: Sequence[float]) -> np.ndarray:
        """Clamp, then round integer parameters"""
        out = self.clamp(theta)
        out[self.integer_mask] = np.rint(out[self.integer_mask])
        return out

    def sample(self, rng: np.random.Generator) -> np.ndarray:
        """One random point drawn from the initialization ranges"""
        theta = np.empty(self.dimension)
        for i, p in enumerate(self.parameters):
            low, high = p.init_range
            if p.integer:
                theta[i] = rng.integers(int(np.ceil(low)), int(np.floor(high)) + 1)
            else:
                value = rng.uniform(low, high)
                # open interval when initializing from zero
                while low == 0.0 and value == 0.0:
                    value = rng.uniform(low, high)
                theta[i] = value
        return theta

    def apply(self, base: ModelParams, theta: Sequence[float]) -> ModelParams:
        """ModelParams with the free parameters replaced by (clamped, rounded) theta"""
        values = self.round(theta)
        return base.with_updates(**dict(zip(self.names, values.tolist())))

    def as_dict(self, theta: Sequence[float]) -> dict:
        """Name -> value, integers as int"""
        values = self.round(theta)
        return {
            name: int(v) if is_int else float(v)
            for name, v, is_int in zip(self.names, values.tolist(), self.integer_mask.tolist())
        }

    def validate_against(self, params_cls=ModelParams) -> None:
        """Every name must be a field of the parameter model"""
        known = set(params_cls.field_names())
        for name in self.names:
            if name not in known:
                raise UnknownParameterError(name)

    def __len__(self) -> int:
        return self.dimension

    def __repr__(self) -> str:
        return f"FreeParameterSpace({self.names})"


def init_free_params(names: Sequence[str], rng: np.random.Generator) -> np.ndarray:
    """
    Random starting point for the named parameters

    N_L and N_H are uniform integers in [100, 10000]; all other parameters
    are uniform in (0, 0.1).

    Raises:
        UnknownParameterError: For a name that is not a ModelParams field
    """
    return FreeParameterSpace.from_names(names).sample(rng)


def initial_simplex(space: FreeParameterSpace, rng: np.random.Generator) -> np.ndarray:
    """n + 1 independently initialized vertices, shape (n + 1, n)"""
    return np.array([space.sample(rng) for _ in range(space.dimension + 1)])
