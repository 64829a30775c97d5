"""
Objective Surface over a Parameter Pair

Sobol points mapped into a rectangle of two parameters, each evaluated
with the calibration objective while every other parameter stays at its
base value.
"""

import dataclasses
import logging
from pathlib import Path
from typing import Optional, Tuple, Union

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..models.params import INTEGER_PARAMETERS, ModelParams
from ..objective.msm import CalibrationObjective, ObjectiveSpec
from ..optimize.space import FreeParameter, FreeParameterSpace
from ..parallel import WorkerPool
from .sobol import sobol_2d


logger = logging.getLogger(__name__)


class SurfaceSpec(BaseModel):
    """Swept parameter pair and sampling settings"""

    model_config = ConfigDict(frozen=True)

    param_x: str
    param_y: str
    range_x: Tuple[float, float]
    range_y: Tuple[float, float]
    n_points: int = Field(default=1000, ge=1)
    replications: int = Field(default=5, ge=1)

    @model_validator(mode='after')
    def check_pair(self) -> 'SurfaceSpec':
        if self.param_x == self.param_y:
            raise ValueError(f'param_x and param_y must differ (both {self.param_x})')
        known = ModelParams.field_names()
        for name in (self.param_x, self.param_y):
            if name not in known:
                raise ValueError(f'unknown parameter: {name}')
        for name, (low, high) in (('range_x', self.range_x), ('range_y', self.range_y)):
            if not low < high:
                raise ValueError(f'{name} must satisfy low < high (got {low}, {high})')
        return self

    def space(self) -> FreeParameterSpace:
        return FreeParameterSpace([
            FreeParameter(
                name=name, lower=low, upper=high, integer=name in INTEGER_PARAMETERS
            )
            for name, (low, high) in ((self.param_x, self.range_x), (self.param_y, self.range_y))
        ])


@dataclasses.dataclass
class SurfacePoints:
    """Evaluated points; columns x, y, f"""
    spec: SurfaceSpec
    frame: pd.DataFrame

    def write(self, output_dir: Union[str, Path]) -> Path:
        out = Path(output_dir)
        out.mkdir(parents=True, exist_ok=True)
        path = out / "surface_points.csv"
        self.frame.to_csv(path, index=False, float_format='%.10g')
        return path


def map_points(spec: SurfaceSpec, unit_points: np.ndarray) -> np.ndarray:
    """Affine map of unit-square points into the rectangle, integers rounded"""
    space = spec.space()
    mapped = space.lower + np.asarray(unit_points) * space.widths
    return np.array([space.round(p) for p in mapped])


def evaluate_surface(
    spec: SurfaceSpec,
    objective_spec: ObjectiveSpec,
    master_seed: int,
    pool: Optional[WorkerPool] = None,
) -> SurfacePoints:
    """
    Evaluate the objective at n_points Sobol points of the rectangle

    Args:
        spec: Swept pair, ranges and counts
        objective_spec: Reference moments, weights and base parameters
        master_seed: Seed of every evaluation
        pool: Worker pool for the point evaluations

    Returns:
        SurfacePoints with one row per point
    """
    points = map_points(spec, sobol_2d(spec.n_points))
    swept = dataclasses.replace(objective_spec, space=spec.space())
    calibration = CalibrationObjective(swept, master_seed, pool)

    logger.info(
        f"Surface {spec.param_x} x {spec.param_y}: {spec.n_points} points, I={spec.replications}",
        extra={'count': spec.n_points}
    )
    values = calibration.evaluate_batch(list(points), replications=spec.replications)
    frame = pd.DataFrame({'x': points[:, 0], 'y': points[:, 1], 'f': values})
    return SurfacePoints(spec=spec, frame=frame)
