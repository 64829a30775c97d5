"""
Market Simulation

Session loop of the LF/HF trader model. Session 1 is the opening auction
in which every LF trader places an order; from session 2 on each session
runs, in this order:

    expire -> fundamental -> LF activation -> LF orders -> HF activation
    -> HF orders -> clearing -> market price -> profits -> strategy update

Randomness comes from four generators split off the simulation seed
(fundamental, LF, HF, strategy), so changing the number of HF traders
leaves every LF draw untouched.
"""

import json
import logging
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np
import pandas as pd

from ..agents.rules import (
    chartist_probability,
    chartist_size,
    fundamentalist_size,
    hf_is_active,
    hf_order_price,
    hf_order_size,
    hf_profit,
    lf_order_price,
    lf_profit,
    lf_to_order,
    update_fundamental,
)
from ..agents.traders import HFTraderPool, LFTraderPool
from ..lob.book import OrderBook
from ..lob.orders import LimitOrder, Side
from ..metrics import record_simulation
from ..models.errors import NonPositivePriceError
from ..models.params import ModelParams
from .seeds import spawn_streams


logger = logging.getLogger(__name__)


@dataclass
class SimulationResult:
    """Output of one simulation

    Attributes:
        market_prices: P[0..T] (P[0] is the seed price P1), length T + 1
        fundamentals: F[1..T], length T
        trades_per_session: Trade count per session, length T
        volume: Traded size per session, length T
        lf_attempts: Active LF traders per session, length T
        hf_orders: HF orders placed per session, length T
        hf_profit: Realized HF profit summed over the run
        seed: Simulation seed
        events: Order placements in placement order (only when recorded)
    """
    market_prices: np.ndarray
    fundamentals: np.ndarray
    trades_per_session: np.ndarray
    volume: np.ndarray
    lf_attempts: np.ndarray
    hf_orders: np.ndarray
    seed: int
    hf_profit: float = 0.0
    events: Optional[List[Dict[str, Any]]] = field(default=None, repr=False)

    def __post_init__(self):
        prices = np.asarray(self.market_prices, dtype=np.float64)
        bad = np.flatnonzero(prices <= 0)
        if bad.size:
            raise NonPositivePriceError(int(bad[0]), float(prices[bad[0]]))
        if len(self.fundamentals) + 1 != len(prices):
            raise ValueError(
                f"market_prices must have length T + 1 = {len(self.fundamentals) + 1}, "
                f"got {len(prices)}"
            )
        self.market_prices = prices
        self.fundamentals = np.asarray(self.fundamentals, dtype=np.float64)
        self.trades_per_session = np.asarray(self.trades_per_session, dtype=np.int64)
        self.volume = np.asarray(self.volume, dtype=np.float64)
        self.lf_attempts = np.asarray(self.lf_attempts, dtype=np.int64)
        self.hf_orders = np.asarray(self.hf_orders, dtype=np.int64)

    @property
    def T(self) -> int:
        return len(self.fundamentals)

    @property
    def log_prices(self) -> np.ndarray:
        """log P[1..T]"""
        return np.log(self.market_prices[1:])

    def to_frame(self) -> pd.DataFrame:
        """One row per session 1..T"""
        return pd.DataFrame({
            'session': np.arange(1, self.T + 1),
            'market_price': self.market_prices[1:],
            'fundamental': self.fundamentals,
            'trade_count': self.trades_per_session,
        })

    def to_csv(self, path: Union[str, Path]) -> None:
        self.to_frame().to_csv(path, index=False, float_format='%.10g')

    def to_dict(self) -> Dict[str, Any]:
        return {
            'seed': self.seed,
            'market_prices': self.market_prices.tolist(),
            'fundamentals': self.fundamentals.tolist(),
            'trades_per_session': self.trades_per_session.tolist(),
            'volume': self.volume.tolist(),
            'lf_attempts': self.lf_attempts.tolist(),
            'hf_orders': self.hf_orders.tolist(),
            'hf_profit': self.hf_profit,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> 'SimulationResult':
        return cls(**json.loads(text))


class MarketSimulation:
    """
    One simulation instance: order book, trader populations and RNG streams

    Usage:
        sim = MarketSimulation(params, seed=7)
        result = sim.run()
    """

    def __init__(self, params: ModelParams, seed: int, record_events: bool = False):
        self.params = params
        self.seed = int(seed)
        self.record_events = record_events

        (self._rng_fundamental,
         self._rng_lf,
         self._rng_hf,
         self._rng_strategy) = spawn_streams(self.seed, 4)

        self.book = OrderBook()
        self.lf = LFTraderPool(params, self._rng_lf)
        self.hf = HFTraderPool(params, self._rng_hf)

        self._next_order_id = 0
        self._events: Optional[List[Dict[str, Any]]] = [] if record_events else None

    def _new_order_id(self) -> int:
        self._next_order_id += 1
        return self._next_order_id

    def _record(self, session: int, kind: str, order: LimitOrder) -> None:
        if self._events is not None:
            self._events.append({
                'session': session,
                'kind': kind,
                'trader_id': order.trader_id,
                'order_id': order.order_id,
                'side': order.side.value,
                'price': order.price,
                'size': order.size,
            })

    def _place_lf_orders(
        self,
        session: int,
        active: np.ndarray,
        p_prev: float,
        p_prev2: float,
        f_now: float,
    ) -> None:
        """Strategy draw, signed size and limit price for every active LF trader"""
        p = self.params
        pool = self.lf
        n = active.size

        if session == 1:
            chartist = self._rng_strategy.random(n) < 0.5
        else:
            chartist = self._rng_strategy.random(n) < pool.prob_chartist[active]
        pool.is_chartist[active] = chartist

        sizes = np.empty(n)
        n_c = int(chartist.sum())
        sizes[chartist] = chartist_size(
            p.alpha_c, p.sigma_c, p_prev, p_prev2, self._rng_lf, size=n_c
        )
        sizes[~chartist] = fundamentalist_size(
            p.alpha_f, p.sigma_f, f_now, p_prev, self._rng_lf, size=n - n_c
        )
        prices = lf_order_price(p_prev, p.delta, p.sigma_z, self._rng_lf, size=n)

        pool.last_activation[active] = session
        pool.last_size[active] = sizes
        pool.last_price[active] = prices

        for trader_id, signed, price in zip(active.tolist(), sizes.tolist(), prices.tolist()):
            order = lf_to_order(signed, price, p.gamma_L, session, trader_id, self._next_order_id + 1)
            if order is None:
                continue
            self._next_order_id = order.order_id
            self.book.insert(order)
            self._record(session, 'lf', order)

    def _place_hf_orders(self, session: int, p_prev: float, p_prev2: float) -> List[LimitOrder]:
        """Orders of HF traders whose activation threshold was exceeded"""
        p = self.params
        placed: List[LimitOrder] = []
        if self.hf.size == 0:
            return placed

        active = np.flatnonzero(hf_is_active(p_prev, p_prev2, self.hf.threshold))
        for j in active.tolist():
            side = Side.BUY if self._rng_hf.random() < 0.5 else Side.SELL
            size = hf_order_size(self.book.sizes(side.opposite), p.lambda_, self._rng_hf)
            if size is None:
                continue
            price = hf_order_price(
                self.book.best_bid(), self.book.best_ask(), side,
                p.kappa_min, p.kappa_max, self._rng_hf,
            )
            if price is None or price <= 0:
                continue
            order = LimitOrder(
                order_id=self._new_order_id(),
                trader_id=j,
                side=side,
                price=price,
                size=size,
                placed_session=session,
                lifetime=p.gamma_H,
            )
            self.book.insert(order)
            self._record(session, 'hf', order)
            placed.append(order)
        return placed

    def _update_strategies(self, active: np.ndarray, market_price: float) -> None:
        """Profit of the played strategy feeds the switching probability; the unplayed one scores 0"""
        pool = self.lf
        profit = lf_profit(market_price, pool.last_price[active], pool.last_size[active])
        chartist = pool.is_chartist[active]
        pi_c = np.where(chartist, profit, 0.0)
        pi_f = np.where(chartist, 0.0, profit)
        pool.prob_chartist[active] = chartist_probability(pi_c, pi_f, self.params.zeta)

    def run(self) -> SimulationResult:
        """Run all T sessions"""
        p = self.params
        started = time.perf_counter()
        T = p.T

        market_prices = np.empty(T + 1)
        market_prices[0] = p.P1
        fundamentals = np.empty(T)
        trades = np.zeros(T, dtype=np.int64)
        volume = np.zeros(T)
        lf_attempts = np.zeros(T, dtype=np.int64)
        hf_orders = np.zeros(T, dtype=np.int64)
        hf_total_profit = 0.0

        p_prev2, p_prev = p.P0, p.P1
        f_now = p.F0

        for t in range(1, T + 1):
            self.book.expire(t)
            f_now = update_fundamental(f_now, p.delta, p.sigma_y, self._rng_fundamental)
            fundamentals[t - 1] = f_now

            active = np.flatnonzero(self.lf.active_mask(t))
            lf_attempts[t - 1] = active.size
            if active.size:
                self._place_lf_orders(t, active, p_prev, p_prev2, f_now)

            placed_hf: List[LimitOrder] = []
            if t >= 2:
                placed_hf = self._place_hf_orders(t, p_prev, p_prev2)
            hf_orders[t - 1] = len(placed_hf)

            result = self.book.clear_session(t)
            trades[t - 1] = len(result.trades)
            volume[t - 1] = result.volume
            price = result.market_price if result.market_price is not None else p_prev
            market_prices[t] = price

            if active.size:
                self._update_strategies(active, price)
            for order in placed_hf:
                hf_total_profit += hf_profit(price, order.price, order.size, order.side)

            p_prev2, p_prev = p_prev, price

            if t % 100 == 0:
                logger.debug(
                    f"Session {t}/{T}: price={price:.4f}, trades={trades[t - 1]}",
                    extra={'session': t}
                )

        elapsed = time.perf_counter() - started
        record_simulation(elapsed)
        logger.debug(
            f"Simulation finished: T={T}, seed={self.seed}, trades={int(trades.sum())}",
            extra={'elapsed_s': round(elapsed, 3)}
        )

        return SimulationResult(
            market_prices=market_prices,
            fundamentals=fundamentals,
            trades_per_session=trades,
            volume=volume,
            lf_attempts=lf_attempts,
            hf_orders=hf_orders,
            seed=self.seed,
            hf_profit=float(hf_total_profit),
            events=self._events,
        )


def run_simulation(params: ModelParams, seed: int, record_events: bool = False) -> SimulationResult:
    """
    Simulate one price path

    Args:
        params: Validated parameter set
        seed: Simulation seed; equal (params, seed) give identical results
        record_events: Keep the order placement log on the result

    Returns:
        SimulationResult
    """
    if not isinstance(params, ModelParams):
        params = ModelParams.from_mapping(dict(params))
    return MarketSimulation(params, seed, record_events=record_events).run()
