"""
Order and Trade Records

Plain dataclasses for resting limit orders and executed trades.
"""

from dataclasses import dataclass
from enum import Enum


class Side(str, Enum):
    """Order side"""
    BUY = "buy"
    SELL = "sell"

    @property
    def opposite(self) -> 'Side':
        return Side.SELL if self is Side.BUY else Side.BUY


@dataclass(slots=True)
class LimitOrder:
    """A resting limit order

    Attributes:
        order_id: Unique id; breaks ties in price and placement session
        trader_id: Id of the placing trader
        side: Buy or sell
        price: Limit price (> 0)
        size: Remaining size in asset units (> 0, real-valued)
        placed_session: Session in which the order was placed
        lifetime: Sessions the order may rest before expiry (>= 1)
    """
    order_id: int
    trader_id: int
    side: Side
    price: float
    size: float
    placed_session: int
    lifetime: int

    def __post_init__(self):
        if not self.price > 0:
            raise ValueError(f"price must be > 0 (got {self.price})")
        if not self.size > 0:
            raise ValueError(f"size must be > 0 (got {self.size})")
        if self.lifetime < 1:
            raise ValueError(f"lifetime must be >= 1 (got {self.lifetime})")

    def is_expired(self, current_session: int) -> bool:
        """True once `lifetime` sessions have passed since placement"""
        return current_session - self.placed_session >= self.lifetime

    def priority_key(self) -> tuple:
        """Heap key: best order sorts first on its own side"""
        if self.side is Side.BUY:
            return (-self.price, self.placed_session, self.order_id)
        return (self.price, self.placed_session, self.order_id)


@dataclass(frozen=True, slots=True)
class Trade:
    """An execution between one buy and one sell order"""
    price: float
    size: float
    session: int
    buy_order_id: int
    sell_order_id: int
