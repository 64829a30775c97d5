"""
Trader Agents

Behavioral rules of low-frequency (chartist / fundamentalist) and
high-frequency traders, and the trader records the engine evolves.
"""

from .traders import HFTrader, HFTraderPool, LFTrader, LFTraderPool, Strategy

__all__ = ['Strategy', 'LFTrader', 'HFTrader', 'LFTraderPool', 'HFTraderPool']
