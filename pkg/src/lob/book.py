"""
Order Book with Batch Clearing

Bids and asks are kept in binary heaps keyed by price-time priority
(price, placed_session, order_id). Orders arriving during a session rest
until `clear_session` matches best bid against best ask while the spread
is crossed. Trade price is the mean of the two limit prices, trade size the
smaller remaining size. A partially filled order keeps its queue position.
"""

import heapq
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from ..models.errors import DuplicateOrderError
from .orders import LimitOrder, Side, Trade


logger = logging.getLogger(__name__)


@dataclass
class ClearingResult:
    """Outcome of one session's clearing"""
    trades: List[Trade] = field(default_factory=list)
    market_price: Optional[float] = None

    @property
    def volume(self) -> float:
        return sum(t.size for t in self.trades)


class _BookSide:
    """One side of the book: a heap plus running size totals"""

    def __init__(self, side: Side):
        self.side = side
        self.heap: list[tuple] = []
        self.total_size = 0.0

    def push(self, order: LimitOrder) -> None:
        key = order.priority_key()
        heapq.heappush(self.heap, (key, order))
        self.total_size += order.size

    def best(self) -> Optional[LimitOrder]:
        return self.heap[0][1] if self.heap else None

    def pop(self) -> LimitOrder:
        _, order = heapq.heappop(self.heap)
        self.total_size -= order.size
        return order

    def reduce_best(self, amount: float) -> None:
        # size change does not alter the heap key
        order = self.heap[0][1]
        order.size -= amount
        self.total_size -= amount

    def retain(self, keep) -> List[LimitOrder]:
        kept, removed = [], []
        for entry in self.heap:
            (kept if keep(entry[1]) else removed).append(entry)
        heapq.heapify(kept)
        self.heap = kept
        self.total_size = sum(entry[1].size for entry in kept)
        return [entry[1] for entry in removed]

    def __len__(self) -> int:
        return len(self.heap)


class OrderBook:
    """Central limit order book

    Usage:
        book = OrderBook()
        book.insert(order)
        book.expire(current_session=t)
        result = book.clear_session(session=t)
    """

    def __init__(self):
        self._sides: Dict[Side, _BookSide] = {
            Side.BUY: _BookSide(Side.BUY),
            Side.SELL: _BookSide(Side.SELL),
        }
        self._ids: set[int] = set()

    def insert(self, order: LimitOrder) -> 'OrderBook':
        """
        Insert an order at its priority position

        Args:
            order: Order to rest on its side

        Returns:
            The book itself (for chaining)

        Raises:
            DuplicateOrderError: If an order with the same id is resting
        """
        if order.order_id in self._ids:
            raise DuplicateOrderError(order.order_id)
        self._ids.add(order.order_id)
        self._sides[order.side].push(order)
        return self

    def expire(self, current_session: int) -> List[LimitOrder]:
        """
        Remove every order whose lifetime has elapsed

        Args:
            current_session: Session about to start

        Returns:
            The removed orders
        """
        removed: List[LimitOrder] = []
        for book_side in self._sides.values():
            removed.extend(book_side.retain(lambda o: not o.is_expired(current_session)))
        for order in removed:
            self._ids.discard(order.order_id)
        if removed:
            logger.debug(
                f"Expired {len(removed)} orders",
                extra={'session': current_session, 'count': len(removed)}
            )
        return removed

    def clear_session(self, session: int) -> ClearingResult:
        """
        Match best bid against best ask until the spread is no longer crossed

        Args:
            session: Session index stamped on the trades

        Returns:
            ClearingResult with the trades in execution order and the last
            trade price (None when nothing traded)
        """
        bids, asks = self._sides[Side.BUY], self._sides[Side.SELL]
        result = ClearingResult()

        while bids.heap and asks.heap:
            bid, ask = bids.best(), asks.best()
            if bid.price < ask.price:
                break

            size = min(bid.size, ask.size)
            price = (bid.price + ask.price) / 2.0
            result.trades.append(Trade(
                price=price,
                size=size,
                session=session,
                buy_order_id=bid.order_id,
                sell_order_id=ask.order_id,
            ))

            for book_side, order in ((bids, bid), (asks, ask)):
                if order.size <= size:
                    book_side.pop()
                    self._ids.discard(order.order_id)
                else:
                    book_side.reduce_best(size)

        if result.trades:
            result.market_price = result.trades[-1].price
        return result

    def best_bid(self) -> Optional[float]:
        order = self._sides[Side.BUY].best()
        return order.price if order else None

    def best_ask(self) -> Optional[float]:
        order = self._sides[Side.SELL].best()
        return order.price if order else None

    def best_quote(self, side: Side) -> Optional[float]:
        """Best price resting on `side`"""
        return self.best_bid() if side is Side.BUY else self.best_ask()

    def sizes(self, side: Side) -> List[float]:
        return [entry[1].size for entry in self._sides[side].heap]

    def mean_size(self, side: Side) -> Optional[float]:
        """Average resting size on `side`, None when the side is empty"""
        book_side = self._sides[side]
        if not book_side.heap:
            return None
        return book_side.total_size / len(book_side)

    def is_crossed(self) -> bool:
        bid, ask = self.best_bid(), self.best_ask()
        return bid is not None and ask is not None and bid >= ask

    @property
    def bids(self) -> List[LimitOrder]:
        """Bids in priority order (price desc, session asc, id asc)"""
        return [entry[1] for entry in sorted(self._sides[Side.BUY].heap, key=lambda e: e[0])]

    @property
    def asks(self) -> List[LimitOrder]:
        """Asks in priority order (price asc, session asc, id asc)"""
        return [entry[1] for entry in sorted(self._sides[Side.SELL].heap, key=lambda e: e[0])]

    def depth(self, side: Side) -> int:
        return len(self._sides[side])

    def __len__(self) -> int:
        return len(self._ids)

    def __contains__(self, order_id: int) -> bool:
        return order_id in self._ids
