"""
Weight Matrix

Inverse of the bootstrap covariance of the estimated moments. The inverse
is computed with a symmetric (Bunch-Kaufman LDL^T) solve and symmetrized.
"""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional, Union

import numpy as np
from scipy import linalg

from ..models.errors import SingularMatrixError


logger = logging.getLogger(__name__)

WARN_CONDITION = 1e8
MAX_CONDITION = 1e12
SYMMETRY_TOLERANCE = 1e-9


def _check_symmetric(matrix: np.ndarray, what: str) -> None:
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError(f"{what} must be square, got shape {matrix.shape}")
    scale = max(float(np.abs(matrix).max()), np.finfo(float).tiny)
    if np.abs(matrix - matrix.T).max() > SYMMETRY_TOLERANCE * scale:
        raise ValueError(f"{what} is not symmetric")


@dataclass(frozen=True, eq=False)
class WeightMatrix:
    """Symmetric positive semi-definite weights of the quadratic form

    Attributes:
        entries: k x k matrix
        condition_number: 2-norm condition number of the inverted covariance
        b, n, seed: Bootstrap settings that produced it (None when given directly)
    """
    entries: np.ndarray
    condition_number: float
    b: Optional[int] = None
    n: Optional[int] = None
    seed: Optional[int] = None

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=np.float64)
        _check_symmetric(entries, "weight matrix")
        eigenvalues = np.linalg.eigvalsh((entries + entries.T) / 2.0)
        norm = np.linalg.norm(entries, 2)
        if eigenvalues.min() < -1e-9 * norm:
            raise ValueError(f"weight matrix is not positive semi-definite (min eigenvalue {eigenvalues.min():.3e})")
        object.__setattr__(self, 'entries', entries)

    @property
    def k(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def identity(cls, k: int = 5) -> 'WeightMatrix':
        return cls(np.eye(k), condition_number=1.0)

    def quadratic_form(self, g: np.ndarray) -> float:
        g = np.asarray(g, dtype=np.float64)
        return float(g @ self.entries @ g)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'entries': self.entries.ravel().tolist(),
            'condition_number': self.condition_number,
            'b': self.b,
            'n': self.n,
            'seed': self.seed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def write(self, path: Union[str, Path]) -> None:
        Path(path).write_text(self.to_json(), encoding='utf-8')

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'WeightMatrix':
        flat = np.asarray(data['entries'], dtype=np.float64)
        k = int(round(np.sqrt(flat.size)))
        if k * k != flat.size:
            raise ValueError(f"entries must hold k*k values, got {flat.size}")
        return cls(
            entries=flat.reshape(k, k),
            condition_number=float(data['condition_number']),
            b=data.get('b'),
            n=data.get('n'),
            seed=data.get('seed'),
        )

    @classmethod
    def read(cls, path: Union[str, Path]) -> 'WeightMatrix':
        return cls.from_dict(json.loads(Path(path).read_text(encoding='utf-8')))


def weight_matrix(
    cov: np.ndarray,
    b: Optional[int] = None,
    n: Optional[int] = None,
    seed: Optional[int] = None,
    max_condition: float = MAX_CONDITION,
) -> WeightMatrix:
    """
    Invert a covariance matrix into weights

    Args:
        cov: Symmetric covariance matrix
        b, n, seed: Bootstrap provenance stored on the result
        max_condition: Condition number above which inversion is refused

    Returns:
        WeightMatrix

    Raises:
        ValueError: cov not square or not symmetric
        SingularMatrixError: Condition number above max_condition
    """
    cov = np.asarray(cov, dtype=np.float64)
    _check_symmetric(cov, "covariance matrix")

    condition = float(np.linalg.cond(cov))
    if not np.isfinite(condition) or condition > max_condition:
        raise SingularMatrixError(condition, max_condition)
    if condition > WARN_CONDITION:
        logger.warning(
            f"Covariance matrix is ill-conditioned (condition number {condition:.4e})",
            extra={'condition_number': condition}
        )
    else:
        logger.info(
            f"Covariance condition number {condition:.4e}",
            extra={'condition_number': condition}
        )

    inverse = linalg.solve(cov, np.eye(cov.shape[0]), assume_a='sym')
    inverse = (inverse + inverse.T) / 2.0
    return WeightMatrix(entries=inverse, condition_number=condition, b=b, n=n, seed=seed)
