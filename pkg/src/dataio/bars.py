"""
One-Minute Mid-Price Bars

Per trading day, the bar of minute m is the mid of the last quote within
m, for every minute in [day_start, day_end). Minutes without a quote
repeat the previous bar. A day yields exactly
(day_end - day_start) / 1 minute bars (460 for 09:10-16:50).
"""

import logging
from dataclasses import dataclass
from datetime import time
from pathlib import Path
from typing import Iterable, List, Union

import numpy as np
import pandas as pd

from ..models.errors import DataFormatError, NonPositivePriceError
from .ticks import TickKind, TickRecord


logger = logging.getLogger(__name__)

DAY_START = time(9, 10)
DAY_END = time(16, 50)
MINUTE_FORMAT = '%Y-%m-%dT%H:%M'
BAR_COLUMNS = ['minute', 'mid_price']


@dataclass(frozen=True)
class PriceBar:
    """Mid price at the close of one minute"""
    minute: pd.Timestamp
    mid_price: float

    def __post_init__(self):
        if not self.mid_price > 0:
            raise ValueError(f"mid_price must be > 0 (got {self.mid_price})")


def _quote_frame(ticks: Iterable[TickRecord]) -> pd.DataFrame:
    rows = [(t.timestamp, t.mid) for t in ticks if t.kind is TickKind.QUOTE]
    frame = pd.DataFrame(rows, columns=['timestamp', 'mid'])
    frame['timestamp'] = pd.to_datetime(frame['timestamp'])
    return frame


def bars_from_quotes(
    ticks: Iterable[TickRecord],
    day_start: time = DAY_START,
    day_end: time = DAY_END,
) -> List[PriceBar]:
    """
    Build minute bars from level-1 quotes

    Args:
        ticks: Timestamp-ordered records (non-quotes are ignored)
        day_start: First minute of the trading window
        day_end: End of the window (exclusive)

    Returns:
        Bars of every day that has at least one quote in the window

    A leading empty minute takes the previous day's last bar, else the
    day's last pre-window quote, else the first quote in the window.
    """
    ticks = list(ticks)
    quotes = _quote_frame(ticks)
    days = sorted({t.timestamp.normalize() for t in ticks})
    start_offset = pd.Timedelta(hours=day_start.hour, minutes=day_start.minute)
    end_offset = pd.Timedelta(hours=day_end.hour, minutes=day_end.minute)

    bars: List[PriceBar] = []
    previous_mid = None
    for day in days:
        window_start, window_end = day + start_offset, day + end_offset
        on_day = quotes[(quotes['timestamp'] >= day) & (quotes['timestamp'] < window_end)]
        in_window = on_day[on_day['timestamp'] >= window_start]
        if in_window.empty:
            logger.warning(f"No quotes on {day.date()} between {day_start} and {day_end}; day skipped")
            continue

        minutes = pd.date_range(window_start, window_end, freq='min', inclusive='left')
        last_per_minute = in_window.groupby(in_window['timestamp'].dt.floor('min'))['mid'].last()
        mids = last_per_minute.reindex(minutes).ffill()

        if pd.isna(mids.iloc[0]):
            pre_window = on_day[on_day['timestamp'] < window_start]
            if previous_mid is not None:
                seed = previous_mid
            elif not pre_window.empty:
                seed = float(pre_window['mid'].iloc[-1])
            else:
                seed = float(in_window['mid'].iloc[0])
            mids = mids.fillna(seed)

        values = np.round(mids.to_numpy(dtype=np.float64), 6)
        bars.extend(PriceBar(minute=m, mid_price=float(v)) for m, v in zip(minutes, values))
        previous_mid = float(values[-1])

    logger.info(f"Built {len(bars)} minute bars", extra={'count': len(bars)})
    return bars


def write_bars(bars: Iterable[PriceBar], path: Union[str, Path]) -> None:
    """Bar CSV: minute,mid_price with 6 fractional digits"""
    frame = pd.DataFrame(
        [(b.minute.strftime(MINUTE_FORMAT), f"{b.mid_price:.6f}") for b in bars],
        columns=BAR_COLUMNS,
    )
    frame.to_csv(path, index=False)


def read_bars(path: Union[str, Path]) -> List[PriceBar]:
    """
    Read a bar CSV

    Raises:
        DataFormatError: Wrong header or unparseable row
    """
    frame = pd.read_csv(path, dtype=str, keep_default_na=False)
    if list(frame.columns) != BAR_COLUMNS:
        raise DataFormatError(f"expected header {','.join(BAR_COLUMNS)}", line=1)
    bars = []
    for line, (minute, mid) in enumerate(frame.itertuples(index=False), start=2):
        try:
            bars.append(PriceBar(pd.Timestamp(minute), float(mid)))
        except ValueError as e:
            raise DataFormatError(str(e), line=line) from e
    return bars


def read_bars_csv(path: Union[str, Path]) -> np.ndarray:
    """Mid prices of a bar CSV as an array"""
    prices = np.array([b.mid_price for b in read_bars(path)])
    bad = np.flatnonzero(prices <= 0)
    if bad.size:
        raise NonPositivePriceError(int(bad[0]), float(prices[bad[0]]))
    return prices
