"""Configuration data models

Pydantic models for run configuration files and parameter presets.

Models:
- BootstrapSettings: Block length, sample count
- OptimizerSettings: Method and budget of one calibration
- RunConfig: Complete calibration run (parameters, free set, data, budget)
- PresetsConfig: Named parameter sets (config/presets.yaml)
"""

from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..models.params import ModelParams
from ..optimize.space import FreeParameter, default_free_parameter


class BootstrapSettings(BaseModel):
    """Moving block bootstrap settings

    Attributes:
        b: Block length
        n: Number of bootstrap samples
    """
    model_config = ConfigDict(frozen=True)

    b: int = Field(100, ge=1, description="Block length")
    n: int = Field(10000, ge=2, description="Bootstrap samples")


class OptimizerSettings(BaseModel):
    """Calibration method and budget

    Attributes:
        method: nm_ta or ga
        iterations: NM+TA iterations
        generations: GA generations
        population_size: GA population
        replications: Replications per objective evaluation
        runs: Independent repetitions (confidence intervals when > 1)
    """
    model_config = ConfigDict(frozen=True)

    method: Literal['nm_ta', 'ga'] = 'nm_ta'
    iterations: int = Field(250, ge=1)
    generations: int = Field(100, ge=1)
    population_size: int = Field(100, ge=2)
    replications: int = Field(5, ge=1)
    runs: int = Field(1, ge=1)

    @field_validator('method', mode='before')
    @classmethod
    def normalize_method(cls, v):
        """Accept the CLI spelling nm-ta"""
        return v.replace('-', '_').lower() if isinstance(v, str) else v


class RunConfig(BaseModel):
    """Complete calibration run

    Loaded from a YAML or JSON file, e.g.:

        params: {preset: nm_ta_best}
        free_params:
          - delta
          - {name: N_L, lower: 100, upper: 10000, integer: true}
        bars: data/bars.csv
        weights: out/weights.json
        optimizer: {method: nm_ta, iterations: 250}
        seed: 1
        output_dir: out
    """
    model_config = ConfigDict(frozen=True)

    params: ModelParams
    free_params: List[FreeParameter] = Field(..., min_length=1)
    bars: str
    weights: Optional[str] = None
    bootstrap: BootstrapSettings = BootstrapSettings()
    optimizer: OptimizerSettings = OptimizerSettings()
    seed: int = Field(0, ge=0)
    output_dir: str = "./output"

    @field_validator('free_params', mode='before')
    @classmethod
    def expand_names(cls, v):
        """Bare names get default bounds"""
        if isinstance(v, str):
            v = [name.strip() for name in v.split(',') if name.strip()]
        return [default_free_parameter(item) if isinstance(item, str) else item for item in v]

    @model_validator(mode='after')
    def check_free_names(self) -> 'RunConfig':
        names = [p.name for p in self.free_params]
        if len(set(names)) != len(names):
            raise ValueError(f'free parameter names must be distinct: {names}')
        unknown = [n for n in names if n not in ModelParams.field_names()]
        if unknown:
            raise ValueError(f'unknown free parameters: {unknown}')
        return self


class PresetsConfig(BaseModel):
    """Named parameter sets

    Loaded from: config/presets.yaml

    Each entry is a flat parameter mapping; `base: <name>` inherits every
    value of another preset and overrides the ones listed.
    """
    presets: Dict[str, Dict[str, Any]]

    @field_validator('presets')
    @classmethod
    def presets_not_empty(cls, v):
        if not v:
            raise ValueError('at least one preset is required')
        return v

    def resolve(self, name: str, _seen: Optional[tuple] = None) -> Dict[str, Any]:
        """Flat mapping of a preset with inheritance applied"""
        if name not in self.presets:
            raise KeyError(f"Unknown preset: {name} (available: {sorted(self.presets)})")
        seen = (_seen or ()) + (name,)
        entry = dict(self.presets[name])
        base = entry.pop('base', None)
        if base is None:
            return entry
        if base in seen:
            raise ValueError(f"Preset inheritance cycle: {' -> '.join(seen + (base,))}")
        merged = self.resolve(base, seen)
        merged.update(entry)
        return merged
