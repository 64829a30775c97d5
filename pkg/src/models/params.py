"""
Model Parameter Set

Pydantic model for the full parameter vector of the LF/HF trader model,
including initial prices. Serializes to a flat JSON object whose keys match
the conventional parameter symbols ("lambda" included).
"""

import json
from pathlib import Path
from typing import Any, Dict, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from .errors import InvalidParametersError, UnknownParameterError


INTEGER_PARAMETERS = frozenset({"T", "N_L", "N_H", "gamma_L", "gamma_H"})


class ModelParams(BaseModel):
    """Full parameter set of one simulation

    Attributes:
        T: Number of sessions (one simulated minute each)
        N_L, N_H: Number of low- and high-frequency traders
        theta, theta_min, theta_max: Mean and bounds of LF trading frequency
        alpha_c, sigma_c: Chartist order size coefficient and noise scale
        alpha_f, sigma_f: Fundamentalist order size coefficient and noise scale
        sigma_y: Fundamental value shock scale
        delta: Per-session drift of fundamental value and LF order prices
        sigma_z: LF order price shock scale
        zeta: Intensity of strategy switching
        gamma_L, gamma_H: LF/HF order lifetimes in sessions
        eta_min, eta_max: Bounds of HF activation thresholds
        lambda_: HF order size weight (JSON key "lambda")
        kappa_min, kappa_max: Bounds of HF price perturbation
        P0, P1: Market prices seeding the two lags of session 1
        F0: Initial fundamental value
    """

    model_config = ConfigDict(frozen=True, populate_by_name=True, extra='forbid')

    T: int = Field(..., ge=1, description="Session count")
    N_L: int = Field(..., ge=1, description="LF trader count")
    N_H: int = Field(..., ge=0, description="HF trader count")
    theta: float = Field(..., gt=0, description="Mean LF trading frequency (sessions)")
    theta_min: float = Field(..., gt=0)
    theta_max: float = Field(..., gt=0)
    alpha_c: float = Field(..., gt=0, lt=1)
    sigma_c: float = Field(..., ge=0)
    alpha_f: float = Field(..., gt=0, lt=1)
    sigma_f: float = Field(..., ge=0)
    sigma_y: float = Field(..., ge=0)
    delta: float = Field(..., ge=0, description="Drift per session; 0 allowed for drift-free runs")
    sigma_z: float = Field(..., ge=0)
    zeta: float = Field(..., gt=0, description="Intensity of switching")
    gamma_L: int = Field(..., ge=1)
    gamma_H: int = Field(..., ge=1)
    eta_min: float = Field(..., ge=0)
    eta_max: float = Field(..., ge=0)
    lambda_: float = Field(..., alias="lambda", gt=0, lt=1)
    kappa_min: float = Field(..., ge=0)
    kappa_max: float = Field(..., ge=0)
    P0: float = Field(..., gt=0)
    P1: float = Field(..., gt=0)
    F0: float = Field(..., gt=0)

    @model_validator(mode='after')
    def check_cross_field_bounds(self) -> 'ModelParams':
        """Validate orderings between related parameters"""
        if self.gamma_H >= self.gamma_L:
            raise ValueError(f'gamma_H ({self.gamma_H}) must be < gamma_L ({self.gamma_L})')
        if not self.theta_min <= self.theta <= self.theta_max:
            raise ValueError(
                f'theta ({self.theta}) must lie in [theta_min, theta_max] = '
                f'[{self.theta_min}, {self.theta_max}]'
            )
        if self.eta_min > self.eta_max:
            raise ValueError(f'eta_min ({self.eta_min}) must be <= eta_max ({self.eta_max})')
        if self.kappa_min > self.kappa_max:
            raise ValueError(f'kappa_min ({self.kappa_min}) must be <= kappa_max ({self.kappa_max})')
        return self

    @classmethod
    def field_names(cls) -> list[str]:
        """External (JSON) names of all parameters, in declaration order"""
        return [info.alias or name for name, info in cls.model_fields.items()]

    @classmethod
    def from_mapping(cls, data: Dict[str, Any]) -> 'ModelParams':
        """Validate a flat mapping, converting failures to InvalidParametersError"""
        try:
            return cls.model_validate(data)
        except ValidationError as e:
            first = e.errors()[0]
            location = ".".join(str(part) for part in first.get('loc', ())) or "params"
            raise InvalidParametersError(location, first['msg']) from e

    @classmethod
    def from_json(cls, source: Union[str, Path]) -> 'ModelParams':
        """Load parameters from a JSON file path"""
        with open(source, 'r', encoding='utf-8') as f:
            return cls.from_mapping(json.load(f))

    def to_dict(self) -> Dict[str, Any]:
        """Flat mapping keyed by the external parameter names"""
        return self.model_dump(by_alias=True)

    def to_json(self) -> str:
        """Serialize to a flat JSON object"""
        return json.dumps(self.to_dict(), indent=2)

    def get(self, name: str) -> float:
        """Look up a parameter by its external name"""
        data = self.to_dict()
        if name not in data:
            raise UnknownParameterError(name)
        return data[name]

    def with_updates(self, **values: Any) -> 'ModelParams':
        """Return a validated copy with some parameters replaced

        Keys are external names ("lambda", not "lambda_"). Integer-valued
        parameters are rounded to the nearest integer.
        """
        data = self.to_dict()
        for name, value in values.items():
            if name not in data:
                raise UnknownParameterError(name)
            data[name] = int(round(value)) if name in INTEGER_PARAMETERS else float(value)
        return self.from_mapping(data)
