"""
Limit Order Book

Price-time priority book with session-batch clearing.
"""

from .orders import LimitOrder, Side, Trade
from .book import ClearingResult, OrderBook

__all__ = ['LimitOrder', 'Side', 'Trade', 'OrderBook', 'ClearingResult']
