"""
Synthetic Tick Generator

Per-second level-1 quotes around a geometric random-walk mid price, with
one trade print per minute. Stands in for vendor tick data in tests and
demos.
"""

import logging
from datetime import time
from typing import List, Optional

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field

from .ticks import TickKind, TickRecord


logger = logging.getLogger(__name__)


class SynthSettings(BaseModel):
    """Quote generator settings"""

    model_config = ConfigDict(frozen=True)

    initial_mid: float = Field(default=238.75, gt=0)
    volatility: float = Field(default=1e-4, ge=0, description="Per-step log-mid std")
    spread: float = Field(default=0.02, gt=0)
    interval_s: int = Field(default=1, ge=1)
    session_open: time = time(9, 0)
    session_close: time = time(17, 0)
    start_date: str = "2013-11-01"


def synth_ticks(days: int = 5, seed: int = 0, settings: Optional[SynthSettings] = None) -> List[TickRecord]:
    """
    Generate quotes over `days` business days

    Args:
        days: Trading days
        seed: Generator seed
        settings: Generator settings

    Returns:
        Timestamp-ordered TickRecords
    """
    s = settings or SynthSettings()
    rng = np.random.default_rng(seed)
    trading_days = pd.bdate_range(s.start_date, periods=days)
    open_offset = pd.Timedelta(hours=s.session_open.hour, minutes=s.session_open.minute)
    close_offset = pd.Timedelta(hours=s.session_close.hour, minutes=s.session_close.minute)

    records: List[TickRecord] = []
    log_mid = np.log(s.initial_mid)
    half = s.spread / 2.0
    for day in trading_days:
        stamps = pd.date_range(day + open_offset, day + close_offset, freq=f"{s.interval_s}s", inclusive='left')
        steps = rng.normal(0.0, s.volatility, stamps.size) if s.volatility > 0 else np.zeros(stamps.size)
        path = log_mid + np.cumsum(steps)
        mids = np.maximum(np.exp(path), s.spread)
        for stamp, mid in zip(stamps, mids.tolist()):
            bid, ask = round(mid - half, 6), round(mid + half, 6)
            records.append(TickRecord(timestamp=stamp, kind=TickKind.QUOTE, bid=bid, ask=ask))
            if stamp.second == 30:
                records.append(TickRecord(
                    timestamp=stamp + pd.Timedelta(milliseconds=500),
                    kind=TickKind.TRADE,
                    price=round(mid, 6),
                    volume=float(rng.integers(1, 1000)),
                ))
        log_mid = path[-1] if path.size else log_mid

    logger.info(f"Generated {len(records)} synthetic ticks over {days} days", extra={'count': len(records)})
    return records
