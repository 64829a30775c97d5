"""
Tick Data Ingestion

Tick CSV parsing, one-minute mid-price bars, outlier screening and a
synthetic tick generator.
"""

from .bars import PriceBar, bars_from_quotes, read_bars, read_bars_csv, write_bars
from .outliers import TukeyInterval, tukey_interval
from .synth import SynthSettings, synth_ticks
from .ticks import TickKind, TickParseResult, TickRecord, parse_ticks, write_ticks

__all__ = [
    'TickKind',
    'TickRecord',
    'TickParseResult',
    'parse_ticks',
    'write_ticks',
    'PriceBar',
    'bars_from_quotes',
    'read_bars',
    'read_bars_csv',
    'write_bars',
    'TukeyInterval',
    'tukey_interval',
    'SynthSettings',
    'synth_ticks',
]
