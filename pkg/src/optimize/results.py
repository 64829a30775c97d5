"""
Optimizer Result Record

Serializes to the calibration result JSON:
{"method", "free_params", "best_theta", "best_f", "iterations", "trace",
 "seed", "wall_time_s"}
"""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union


@dataclass
class OptimizationResult:
    """Best point found by one optimizer run

    Attributes:
        method: "nm_ta" or "ga"
        free_params: Parameter names in vector order
        best_theta: Best-ever point, name -> value (integers rounded)
        best_f: Objective at best_theta
        iterations: Iterations (NM+TA) or generations (GA) run
        trace: Best-ever objective after each iteration
        seed: Run seed
        wall_time_s: Elapsed seconds
        mean_trace: Per-generation population mean (GA only)
        evaluations: Objective evaluations performed
    """
    method: str
    free_params: List[str]
    best_theta: Dict[str, float]
    best_f: float
    iterations: int
    trace: List[float]
    seed: Optional[int] = None
    wall_time_s: float = 0.0
    mean_trace: Optional[List[float]] = None
    evaluations: int = 0

    def theta_vector(self) -> List[float]:
        return [self.best_theta[name] for name in self.free_params]

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            'method': self.method,
            'free_params': list(self.free_params),
            'best_theta': dict(self.best_theta),
            'best_f': self.best_f,
            'iterations': self.iterations,
            'trace': list(self.trace),
            'seed': self.seed,
            'wall_time_s': self.wall_time_s,
        }
        if self.mean_trace is not None:
            data['mean_trace'] = list(self.mean_trace)
        if self.evaluations:
            data['evaluations'] = self.evaluations
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def write(self, path: Union[str, Path]) -> None:
        Path(path).write_text(self.to_json(), encoding='utf-8')

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'OptimizationResult':
        return cls(**data)

    @classmethod
    def read(cls, path: Union[str, Path]) -> 'OptimizationResult':
        return cls.from_dict(json.loads(Path(path).read_text(encoding='utf-8')))
