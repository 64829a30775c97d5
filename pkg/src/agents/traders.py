"""
Trader Records

`LFTrader` / `HFTrader` are the per-trader views. The engine stores the
population as numpy arrays (`LFTraderPool`, `HFTraderPool`) so that
activation, strategy draws and profit updates run vectorized; `trader(i)`
materializes the record for one trader.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from ..models.params import ModelParams
from .rules import sample_lf_frequency


class Strategy(str, Enum):
    """LF trading strategy"""
    CHARTIST = "chartist"
    FUNDAMENTALIST = "fundamentalist"


@dataclass
class LFTrader:
    """Low-frequency trader"""
    id: int
    frequency: int
    strategy: Strategy
    prob_chartist: float
    last_order: Optional[Tuple[float, float]] = None


@dataclass(frozen=True)
class HFTrader:
    """High-frequency trader"""
    id: int
    activation_threshold: float


class LFTraderPool:
    """Struct-of-arrays store for all LF traders of one simulation"""

    def __init__(self, params: ModelParams, rng: np.random.Generator):
        n = params.N_L
        self.size = n
        self.frequency = sample_lf_frequency(
            rng, params.theta, params.theta_min, params.theta_max, size=n
        )
        self.prob_chartist = np.full(n, 0.5)
        self.is_chartist = np.zeros(n, dtype=bool)
        self.last_activation = np.zeros(n, dtype=np.int64)
        self.last_price = np.full(n, np.nan)
        self.last_size = np.zeros(n)

    def active_mask(self, session: int) -> np.ndarray:
        """Everyone trades in the opening auction, then every `frequency` sessions"""
        if session == 1:
            return np.ones(self.size, dtype=bool)
        return (session - self.last_activation) >= self.frequency

    def trader(self, i: int) -> LFTrader:
        last = None
        if not np.isnan(self.last_price[i]):
            last = (float(self.last_price[i]), float(self.last_size[i]))
        return LFTrader(
            id=i,
            frequency=int(self.frequency[i]),
            strategy=Strategy.CHARTIST if self.is_chartist[i] else Strategy.FUNDAMENTALIST,
            prob_chartist=float(self.prob_chartist[i]),
            last_order=last,
        )


class HFTraderPool:
    """Activation thresholds of all HF traders of one simulation"""

    def __init__(self, params: ModelParams, rng: np.random.Generator):
        self.size = params.N_H
        self.threshold = rng.uniform(params.eta_min, params.eta_max, params.N_H)

    def trader(self, j: int) -> HFTrader:
        return HFTrader(id=j, activation_threshold=float(self.threshold[j]))
