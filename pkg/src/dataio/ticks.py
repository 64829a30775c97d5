"""
Tick CSV Parsing

Schema (header required):

    timestamp,kind,price,bid,ask,volume

timestamp is ISO-8601 with milliseconds, kind one of TRADE, QUOTE,
AUCTION; optional fields may be empty. Malformed rows are collected with
their line numbers instead of aborting the parse.
"""

import csv
import logging
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import List, Optional, Sequence, TextIO, Tuple, Union

import numpy as np
import pandas as pd

from ..models.errors import DataFormatError


logger = logging.getLogger(__name__)

TICK_COLUMNS = ['timestamp', 'kind', 'price', 'bid', 'ask', 'volume']
TIMESTAMP_FORMAT = '%Y-%m-%dT%H:%M:%S.%f'


class TickKind(str, Enum):
    """Record kind"""
    TRADE = "TRADE"
    QUOTE = "QUOTE"
    AUCTION = "AUCTION"


@dataclass(frozen=True)
class TickRecord:
    """One tick

    Quote records carry bid > 0 and ask > 0.
    """
    timestamp: pd.Timestamp
    kind: TickKind
    price: Optional[float] = None
    bid: Optional[float] = None
    ask: Optional[float] = None
    volume: Optional[float] = None

    def __post_init__(self):
        if self.kind is TickKind.QUOTE:
            if self.bid is None or self.ask is None or not (self.bid > 0 and self.ask > 0):
                raise ValueError(f"quote needs bid > 0 and ask > 0 (got bid={self.bid}, ask={self.ask})")

    @property
    def mid(self) -> Optional[float]:
        if self.bid is None or self.ask is None:
            return None
        return (self.bid + self.ask) / 2.0


@dataclass
class TickParseResult:
    """Parsed records in timestamp order plus per-row errors"""
    records: List[TickRecord] = field(default_factory=list)
    errors: List[Tuple[int, str]] = field(default_factory=list)
    reordered: bool = False

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)


def _optional_float(value: str, name: str) -> Optional[float]:
    if value == '':
        return None
    number = float(value)
    if not np.isfinite(number):
        raise ValueError(f"{name} is not finite")
    return number


def parse_ticks(source: Union[str, Path, TextIO]) -> TickParseResult:
    """
    Parse a tick CSV file or stream in one pass

    Args:
        source: Path or open text stream

    Returns:
        TickParseResult; records stably sorted by timestamp

    Raises:
        DataFormatError: Missing or wrong header
    """
    if isinstance(source, (str, Path)):
        with open(source, 'r', encoding='utf-8', newline='') as f:
            return _parse_stream(f)
    return _parse_stream(source)


def _parse_row(fields: List[str]) -> TickRecord:
    if len(fields) != len(TICK_COLUMNS):
        raise ValueError(f"expected {len(TICK_COLUMNS)} fields, got {len(fields)}")
    stamp, kind, price, bid, ask, volume = (f.strip() for f in fields)
    timestamp = pd.Timestamp(stamp)
    if pd.isna(timestamp):
        raise ValueError("empty timestamp")
    try:
        tick_kind = TickKind(kind.upper())
    except ValueError:
        raise ValueError(f"unknown kind {kind!r}") from None
    return TickRecord(
        timestamp=timestamp,
        kind=tick_kind,
        price=_optional_float(price, 'price'),
        bid=_optional_float(bid, 'bid'),
        ask=_optional_float(ask, 'ask'),
        volume=_optional_float(volume, 'volume'),
    )


def _parse_stream(stream: TextIO) -> TickParseResult:
    reader = csv.reader(stream)
    header = next(reader, None)
    if header is None or [c.strip() for c in header] != TICK_COLUMNS:
        got = ','.join(header) if header else '<empty>'
        raise DataFormatError(f"expected header {','.join(TICK_COLUMNS)}, got {got}", line=1)

    result = TickParseResult()
    for fields in reader:
        if not fields:
            continue
        try:
            result.records.append(_parse_row(fields))
        except (ValueError, TypeError) as e:
            result.errors.append((reader.line_num, str(e)))

    for line, message in result.errors[:10]:
        logger.warning(f"Skipped malformed tick row: {message}", extra={'line': line})
    if len(result.errors) > 10:
        logger.warning(f"{len(result.errors)} malformed tick rows in total", extra={'count': len(result.errors)})

    stamps = [r.timestamp for r in result.records]
    if any(b < a for a, b in zip(stamps, stamps[1:])):
        order = sorted(range(len(stamps)), key=stamps.__getitem__)
        result.records = [result.records[i] for i in order]
        result.reordered = True
        logger.warning("Tick timestamps out of order; applied stable sort")

    logger.info(f"Parsed {len(result.records)} ticks", extra={'count': len(result.records)})
    return result


def _format_optional(value: Optional[float]) -> str:
    return '' if value is None else f"{value:.6f}"


def write_ticks(records: Sequence[TickRecord], target: Union[str, Path, TextIO]) -> None:
    """Write records in the tick CSV schema"""
    lines = [','.join(TICK_COLUMNS)]
    for r in records:
        lines.append(','.join([
            r.timestamp.strftime(TIMESTAMP_FORMAT)[:-3],
            r.kind.value,
            _format_optional(r.price),
            _format_optional(r.bid),
            _format_optional(r.ask),
            _format_optional(r.volume),
        ]))
    text = '\n'.join(lines) + '\n'
    if isinstance(target, (str, Path)):
        Path(target).write_text(text, encoding='utf-8')
    else:
        target.write(text)
